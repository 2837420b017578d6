//! Eisenstein integers `a + bω` with `ω² = -1 - ω`, and the additive
//! character `ϑ(x) = ω^Tr(x)` of GF(q).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// `a + bω`. Components are checked `i128`; overflow panics rather than
/// wrapping.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Eisenstein {
    pub a: i128,
    pub b: i128,
}

impl Eisenstein {
    pub const ZERO: Eisenstein = Eisenstein { a: 0, b: 0 };
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };
    pub const OMEGA: Eisenstein = Eisenstein { a: 0, b: 1 };
    pub const OMEGA_SQ: Eisenstein = Eisenstein { a: -1, b: -1 };

    pub const fn new(a: i128, b: i128) -> Self {
        Eisenstein { a, b }
    }

    pub const fn int(n: i128) -> Self {
        Eisenstein { a: n, b: 0 }
    }

    /// Complex conjugate: `conj(ω) = ω² = -1 - ω`.
    pub fn conj(self) -> Self {
        Eisenstein {
            a: self.a.checked_sub(self.b).expect("eisenstein overflow"),
            b: -self.b,
        }
    }

    /// `a² - ab + b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a, self.b);
        a.checked_mul(a)
            .and_then(|aa| aa.checked_sub(a.checked_mul(b)?))
            .and_then(|x| x.checked_add(b.checked_mul(b)?))
            .expect("eisenstein overflow")
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn scale(self, n: i128) -> Self {
        Eisenstein {
            a: self.a.checked_mul(n).expect("eisenstein overflow"),
            b: self.b.checked_mul(n).expect("eisenstein overflow"),
        }
    }

    /// Componentwise exact quotient. Non-divisibility means an upstream
    /// computation is wrong.
    pub fn exact_div(self, n: i128) -> Result<Self> {
        if n <= 0 || self.a % n != 0 || self.b % n != 0 {
            return Err(Error::NotDivisible {
                value: self.to_string(),
                divisor: n,
            });
        }
        Ok(Eisenstein {
            a: self.a / n,
            b: self.b / n,
        })
    }

    /// Parses the text encoding `a+b*w` (also accepts `a-b*w`).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad eisenstein literal {s:?}"));
        let body = s.trim().strip_suffix("*w").ok_or_else(bad)?;
        // split at the sign that starts the ω-coefficient
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a: i128 = body[..split].parse().map_err(|_| bad())?;
        let b_str = &body[split..];
        let b: i128 = b_str
            .strip_prefix('+')
            .unwrap_or(b_str)
            .parse()
            .map_err(|_| bad())?;
        Ok(Eisenstein { a, b })
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}{}*w", self.a, self.b)
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein {
            a: self.a.checked_add(o.a).expect("eisenstein overflow"),
            b: self.b.checked_add(o.b).expect("eisenstein overflow"),
        }
    }
}

impl AddAssign for Eisenstein {
    fn add_assign(&mut self, o: Eisenstein) {
        *self = *self + o;
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Eisenstein) -> Eisenstein {
        self + (-o)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², ω² = -1 - ω
    fn mul(self, o: Eisenstein) -> Eisenstein {
        let m = |x: i128, y: i128| x.checked_mul(y).expect("eisenstein overflow");
        let ac = m(self.a, o.a);
        let bd = m(self.b, o.b);
        let cross = m(self.a, o.b)
            .checked_add(m(self.b, o.a))
            .expect("eisenstein overflow");
        Eisenstein {
            a: ac.checked_sub(bd).expect("eisenstein overflow"),
            b: cross.checked_sub(bd).expect("eisenstein overflow"),
        }
    }
}

impl Sum for Eisenstein {
    fn sum<I: Iterator<Item = Eisenstein>>(iter: I) -> Eisenstein {
        iter.fold(Eisenstein::ZERO, |acc, x| acc + x)
    }
}

/// `ω^(k mod 3)`.
pub fn omega_pow(k: i64) -> Eisenstein {
    match k.rem_euclid(3) {
        0 => Eisenstein::ONE,
        1 => Eisenstein::OMEGA,
        _ => Eisenstein::OMEGA_SQ,
    }
}

/// The fixed nontrivial additive character `ϑ(x) = ω^Tr(x)`.
#[inline]
pub fn theta_char(field: &Field, x: FieldElem) -> Eisenstein {
    omega_pow(field.trace(x) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared() {
        assert_eq!(Eisenstein::OMEGA * Eisenstein::OMEGA, Eisenstein::new(-1, -1));
    }

    #[test]
    fn one_plus_omega_plus_conjugate() {
        let z = Eisenstein::new(1, 1);
        assert_eq!(z + z.conj(), Eisenstein::ONE);
    }

    #[test]
    fn norm_of_two_plus_omega() {
        assert_eq!(Eisenstein::new(2, 1).norm(), 3);
    }

    #[test]
    fn omega_powers() {
        assert_eq!(omega_pow(0), Eisenstein::ONE);
        assert_eq!(omega_pow(3), Eisenstein::ONE);
        assert_eq!(omega_pow(2), Eisenstein::new(-1, -1));
        assert_eq!(omega_pow(-1), Eisenstein::new(-1, -1));
    }

    #[test]
    fn exact_division() {
        assert_eq!(Eisenstein::new(27, 0).exact_div(27).unwrap(), Eisenstein::ONE);
        assert_eq!(Eisenstein::new(3, -3).exact_div(3).unwrap(), Eisenstein::new(1, -1));
        assert!(matches!(
            Eisenstein::new(4, 3).exact_div(3),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        for z in [
            Eisenstein::new(0, 0),
            Eisenstein::new(-3, 1),
            Eisenstein::new(9, -9),
            Eisenstein::new(-1, -1),
        ] {
            assert_eq!(Eisenstein::parse(&z.to_string()).unwrap(), z);
        }
        assert!(Eisenstein::parse("3").is_err());
    }

    #[test]
    fn theta_sums_to_zero_on_prime_field() {
        let f = Field::new(0).unwrap();
        let s: Eisenstein = f.iter().map(|x| theta_char(&f, x)).sum();
        assert!(s.is_zero());
        assert_eq!(theta_char(&f, f.zero()), Eisenstein::ONE);
    }
}
