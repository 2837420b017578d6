//! The Ree Sylow 3-subgroup `U = Y(t1,t3,t4)` in parametric coordinates.
//!
//! The closed-form laws below are the production path; [`SylowGroup::matrix`]
//! maps an element to its 8×8 realization so every law can be checked
//! against plain matrix arithmetic.

use std::fmt;

use serde::Serialize;

use crate::chevalley::{matrix_to_g2_tuple, ree_matrix, ree_tuple, Mat8};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, ENUMERATION_CAP};

/// `Y(t1, t3, t4) = a(t1) b(t3) c(t4)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElem {
    pub t1: FieldElem,
    pub t3: FieldElem,
    pub t4: FieldElem,
}

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem {
        t1: FieldElem::ZERO,
        t3: FieldElem::ZERO,
        t4: FieldElem::ZERO,
    };

    pub fn new(t1: FieldElem, t3: FieldElem, t4: FieldElem) -> Self {
        GroupElem { t1, t3, t4 }
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElem::IDENTITY
    }
}

/// The group together with its field.
#[derive(Clone, Debug)]
pub struct SylowGroup {
    field: Field,
}

impl SylowGroup {
    pub fn new(m: u32) -> Result<Self> {
        Ok(SylowGroup {
            field: Field::new(m)?,
        })
    }

    pub fn from_field(field: Field) -> Self {
        SylowGroup { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `|U| = q³`.
    pub fn order(&self) -> u64 {
        self.q().pow(3)
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::IDENTITY
    }

    pub fn a(&self, t: FieldElem) -> GroupElem {
        GroupElem::new(t, FieldElem::ZERO, FieldElem::ZERO)
    }

    pub fn b(&self, t: FieldElem) -> GroupElem {
        GroupElem::new(FieldElem::ZERO, t, FieldElem::ZERO)
    }

    pub fn c(&self, t: FieldElem) -> GroupElem {
        GroupElem::new(FieldElem::ZERO, FieldElem::ZERO, t)
    }

    pub fn mul(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let f = &self.field;
        let s1_3th = f.pow_3theta(y.t1);
        let t1s1_3th = f.mul(x.t1, s1_3th);
        // t4 + s4 + t1 s1^(3θ+1) - t1² s1^(3θ) - t3 s1
        let t4 = f.add(x.t4, y.t4);
        let t4 = f.add(t4, f.mul(t1s1_3th, y.t1));
        let t4 = f.sub(t4, f.mul(t1s1_3th, x.t1));
        let t4 = f.sub(t4, f.mul(x.t3, y.t1));
        GroupElem {
            t1: f.add(x.t1, y.t1),
            t3: f.sub(f.add(x.t3, y.t3), t1s1_3th),
            t4,
        }
    }

    pub fn inv(&self, x: &GroupElem) -> GroupElem {
        let f = &self.field;
        let p31 = f.mul(f.pow_3theta(x.t1), x.t1);
        let p32 = f.mul(p31, x.t1);
        GroupElem {
            t1: f.neg(x.t1),
            t3: f.sub(f.neg(x.t3), p31),
            t4: f.sub(f.add(f.neg(x.t4), p32), f.mul(x.t1, x.t3)),
        }
    }

    /// `x⁻¹ y⁻¹ x y` in closed form.
    pub fn commutator(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let f = &self.field;
        let (t1, t3, s1, s3) = (x.t1, x.t3, y.t1, y.t3);
        let t1_3 = f.pow_3theta(t1);
        let s1_3 = f.pow_3theta(s1);
        let mid = f.sub(f.mul(t1_3, s1), f.mul(t1, s1_3));
        let u = f.sub(f.mul(f.mul(t1, s1_3), s1), f.mul(f.mul(t1_3, t1), s1));
        let v = f.sub(f.mul(t1_3, f.mul(s1, s1)), f.mul(f.mul(t1, t1), s1_3));
        let w = f.sub(f.mul(t1, s3), f.mul(t3, s1));
        GroupElem {
            t1: FieldElem::ZERO,
            t3: mid,
            t4: f.add(f.add(u, v), w),
        }
    }

    /// `by · x · by⁻¹` in closed form.
    pub fn conjugate(&self, x: &GroupElem, by: &GroupElem) -> GroupElem {
        let f = &self.field;
        let (t1, t3, t4, s1, s3) = (x.t1, x.t3, x.t4, by.t1, by.t3);
        let t1_3 = f.pow_3theta(t1);
        let s1_3 = f.pow_3theta(s1);
        let mid = f.sub(f.add(t3, f.mul(t1, s1_3)), f.mul(t1_3, s1));
        let quad = f.add(f.mul(f.mul(t1, t1), s1_3), f.mul(t1_3, f.mul(s1, s1)));
        let cub = f.mul(f.mul(t1_3, t1), s1);
        let lin = f.sub(f.mul(t3, s1), f.mul(t1, s3));
        GroupElem {
            t1,
            t3: mid,
            t4: f.add(f.add(t4, quad), f.add(cub, lin)),
        }
    }

    /// `x^n` by repeated squaring.
    pub fn pow(&self, x: &GroupElem, mut n: u64) -> GroupElem {
        let mut result = GroupElem::IDENTITY;
        let mut base = *x;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        result
    }

    /// Smallest `n ≥ 1` with `x^n = 1`. Orders in a 3-group are powers of 3.
    pub fn order_of(&self, x: &GroupElem) -> u64 {
        let mut n = 1;
        let mut p = *x;
        while !p.is_identity() {
            p = self.mul(&p, x);
            n += 1;
        }
        n
    }

    /// Position of `x` in the lexicographic enumeration.
    #[inline]
    pub fn index(&self, x: &GroupElem) -> usize {
        let q = self.q() as usize;
        (x.t1.index() * q + x.t3.index()) * q + x.t4.index()
    }

    pub fn from_index(&self, i: usize) -> GroupElem {
        let q = self.q() as usize;
        let f = &self.field;
        let e = |k: usize| f.from_index(k).expect("index below q");
        GroupElem::new(e(i / (q * q)), e((i / q) % q), e(i % q))
    }

    /// All `q³` elements, lexicographic in `(t1, t3, t4)`.
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        if self.q() > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                what: "group enumeration",
                q: self.q(),
                cap: ENUMERATION_CAP,
            });
        }
        Ok((0..self.order() as usize).map(|i| self.from_index(i)).collect())
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> GroupElem {
        let q = self.q() as usize;
        let f = &self.field;
        let mut e = || f.from_index(rng.gen_range(0..q)).expect("index below q");
        GroupElem::new(e(), e(), e())
    }

    /// The 8×8 realization, built from root elements.
    pub fn matrix(&self, x: &GroupElem) -> Mat8 {
        ree_matrix(&self.field, x.t1, x.t3, x.t4)
    }

    /// Inverse of [`SylowGroup::matrix`]; rejects matrices outside `U`.
    pub fn from_matrix(&self, m: &Mat8) -> Result<GroupElem> {
        let f = &self.field;
        let tuple = matrix_to_g2_tuple(f, m)?;
        let x = GroupElem::new(tuple.t(1), tuple.t(3), tuple.t(4));
        if ree_tuple(f, x.t1, x.t3, x.t4) != tuple {
            return Err(Error::NotInG2(
                "matrix lies in G2^syl(q) but is not fixed by the twisted map".into(),
            ));
        }
        Ok(x)
    }

    /// Parses `Y(<t1>;<t3>;<t4>)`.
    pub fn parse(&self, s: &str) -> Result<GroupElem> {
        let inner = s
            .trim()
            .strip_prefix("Y(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected Y(t1;t3;t4), got {s:?}")))?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three coordinates in {s:?}")));
        }
        let f = &self.field;
        Ok(GroupElem::new(f.parse(parts[0])?, f.parse(parts[1])?, f.parse(parts[2])?))
    }

    pub fn format(&self, x: &GroupElem) -> String {
        let f = &self.field;
        format!("Y({};{};{})", f.format(x.t1), f.format(x.t3), f.format(x.t4))
    }

    /// Helper for `Display`-style rendering.
    pub fn display<'a>(&'a self, x: &'a GroupElem) -> impl fmt::Display + 'a {
        struct D<'a>(&'a SylowGroup, &'a GroupElem);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0() -> SylowGroup {
        SylowGroup::new(0).unwrap()
    }

    #[test]
    fn a_b_c_at_zero() {
        let g = g0();
        let z = g.field().zero();
        assert_eq!(g.a(z), g.identity());
        assert_eq!(g.b(z), g.identity());
        assert_eq!(g.c(z), g.identity());
    }

    #[test]
    fn a1_squared() {
        let g = g0();
        let f = g.field();
        let a1 = g.a(f.one());
        assert_eq!(g.mul(&a1, &a1), GroupElem::new(f.from_int(2), f.from_int(2), f.zero()));
    }

    #[test]
    fn inverse_of_a1() {
        let g = g0();
        let f = g.field();
        assert_eq!(
            g.inv(&g.a(f.one())),
            GroupElem::new(f.from_int(2), f.from_int(2), f.from_int(1))
        );
        assert_eq!(g.inv(&g.identity()), g.identity());
    }

    #[test]
    fn a1_has_order_nine() {
        let g = g0();
        let f = g.field();
        let a1 = g.a(f.one());
        assert_eq!(g.pow(&a1, 3), g.c(f.from_int(2)));
        assert_eq!(g.order_of(&a1), 9);
        assert_eq!(g.order_of(&g.identity()), 1);
    }

    #[test]
    fn parse_format_round_trip() {
        let g = SylowGroup::new(1).unwrap();
        let x = g.parse("Y(1,0,2;0,0,0;2,2,2)").unwrap();
        assert_eq!(g.format(&x), "Y(1,0,2;0,0,0;2,2,2)");
        assert!(g.parse("Y(1,0,2;0,0,0)").is_err());
        assert!(g.parse("X(1,0,2;0,0,0;0,0,0)").is_err());
    }

    #[test]
    fn index_round_trip() {
        let g = SylowGroup::new(1).unwrap();
        for i in [0usize, 1, 26, 27, 728, 19682] {
            assert_eq!(g.index(&g.from_index(i)), i);
        }
    }

    #[test]
    fn enumeration_cap() {
        let g = SylowGroup::new(3).unwrap();
        assert!(matches!(g.elements(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn matrix_round_trip_and_non_member() {
        let g = g0();
        let f = g.field();
        for x in g.elements().unwrap() {
            assert_eq!(g.from_matrix(&g.matrix(&x)).unwrap(), x);
        }
        // y1(1) alone lies in G2^syl(3) but is not F-fixed
        let y1 = crate::chevalley::root_element(f, 1, f.one());
        assert!(g.from_matrix(&y1).is_err());
    }
}
