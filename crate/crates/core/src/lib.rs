//! Exact computations in the Sylow 3-subgroups `U` of the Ree groups
//! ²G₂(3^(2m+1)): the group law and its 8×8 realization, the pattern-space
//! orbits, conjugacy classes and superclasses, the supercharacter table over
//! the Eisenstein integers, and the irreducible character table for q = 3.

pub mod chevalley;
pub mod classes;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod group;
pub mod irrchar;
pub mod orbits;
pub mod par;
pub mod superchar;
pub mod verify;

pub use cyclo::{omega_pow, theta_char, Eisenstein};
pub use error::{Error, Result};
pub use field::{ExpForm, Field, FieldElem};
pub use group::{GroupElem, SylowGroup};
