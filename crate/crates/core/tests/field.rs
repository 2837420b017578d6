use proptest::prelude::*;
use ree_syl::field::{ExpForm, Field, FieldElem, ENUMERATION_CAP};
use ree_syl::Error;

// Independent polynomial arithmetic over F_3, coefficients low to high.

fn trim(mut p: Vec<u8>) -> Vec<u8> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 3;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`, by long division.
fn poly_rem(a: &[u8], m: &[u8]) -> Vec<u8> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() - 1 >= dm && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - dm;
        let lead = r[r.len() - 1];
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + 3 - lead * c % 3) % 3;
        }
        r = trim(r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn monic_polys(degree: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..3usize.pow(degree as u32)).map(move |n| {
        let mut c: Vec<u8> = (0..degree).map(|i| ((n / 3usize.pow(i as u32)) % 3) as u8).collect();
        c.push(1);
        c
    })
}

fn irreducible_by_trial_division(f: &[u8]) -> bool {
    let n = f.len() - 1;
    (1..=n / 2).all(|d| monic_polys(d).all(|g| poly_rem(f, &g) != vec![0]))
}

/// Candidates ordered by coefficient vector, constant term compared first.
fn least_irreducible_oracle(n: usize) -> Vec<u8> {
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|k| {
            let mut c: Vec<u8> = (0..n)
                .map(|i| ((k / 3usize.pow((n - 1 - i) as u32)) % 3) as u8)
                .collect();
            c.push(1);
            c
        })
        .find(|c| irreducible_by_trial_division(c))
        .unwrap()
}

fn mul_oracle(f: &Field, a: FieldElem, b: FieldElem) -> FieldElem {
    let mut r = poly_rem(&poly_mul(&f.coeffs(a), &f.coeffs(b)), f.modulus());
    r.resize(f.degree(), 0);
    f.elem(&r).unwrap()
}

#[test]
fn prime_field_modulus_is_x() {
    let f = Field::new(0).unwrap();
    assert_eq!(f.degree(), 1);
    assert_eq!(f.modulus(), &[0, 1]);
}

#[test]
fn modulus_is_least_irreducible() {
    for m in 0..=3 {
        let f = Field::new(m).unwrap();
        assert_eq!(f.modulus(), least_irreducible_oracle(2 * m as usize + 1).as_slice(), "m={m}");
    }
}

#[test]
fn cubic_modulus() {
    assert_eq!(Field::new(1).unwrap().modulus(), &[1, 0, 2, 1]);
}

#[test]
fn multiplication_matches_long_division_exhaustive() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        for a in f.iter() {
            for b in f.iter() {
                assert_eq!(f.mul(a, b), mul_oracle(&f, a, b));
            }
        }
    }
}

#[test]
fn x_times_x_squared() {
    let f = Field::new(1).unwrap();
    let x = f.elem(&[0, 1, 0]).unwrap();
    let x2 = f.elem(&[0, 0, 1]).unwrap();
    // x³ = -2x² - 1 = x² + 2 modulo x³ + 2x² + 1
    assert_eq!(f.mul(x, x2), f.elem(&[2, 0, 1]).unwrap());
}

#[test]
fn prime_field_arithmetic() {
    let f = Field::new(0).unwrap();
    let two = f.from_int(2);
    assert_eq!(f.add(two, two), f.one());
    assert_eq!(f.frob_pow(two, 1), two);
    assert_eq!(f.trace(two), 2);
    assert!(matches!(f.inv(f.zero()), Err(Error::Domain { .. })));
}

#[test]
fn field_axioms_exhaustive_prime_field() {
    let f = Field::new(0).unwrap();
    for a in f.iter() {
        for b in f.iter() {
            for c in f.iter() {
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            }
        }
        if !a.is_zero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }
}

#[test]
fn frobenius_is_an_automorphism() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        for a in f.iter() {
            for b in f.iter() {
                assert_eq!(f.frob_pow(f.add(a, b), 1), f.add(f.frob_pow(a, 1), f.frob_pow(b, 1)));
                assert_eq!(f.frob_pow(f.mul(a, b), 1), f.mul(f.frob_pow(a, 1), f.frob_pow(b, 1)));
            }
            assert_eq!(f.frob_pow(f.frob_pow(a, 1), 2 * m), a);
            assert_eq!(f.frob_pow(a, 2 * m + 1), a);
        }
    }
}

#[test]
fn three_theta_squared_power_is_identity() {
    for m in 0..=2 {
        let f = Field::new(m).unwrap();
        let e = 3 * f.theta() * f.theta();
        for a in f.iter() {
            assert_eq!(f.pow(a, e), a);
            assert_eq!(f.pow(a, f.q()), a);
        }
    }
}

#[test]
fn power_expressions() {
    let f = Field::new(0).unwrap();
    assert_eq!(f.power_expr(f.from_int(2), ExpForm::new(3, 1)), f.one());
    assert_eq!(f.power_expr(f.from_int(2), ExpForm::new(0, 0)), f.one());
    let f = Field::new(1).unwrap();
    for a in f.iter() {
        assert_eq!(f.pow_3theta(a), f.pow(a, 3 * f.theta()));
        assert_eq!(f.pow_3theta(a), f.frob_pow(a, 2));
        assert_eq!(f.power_expr(a, ExpForm::new(6, 3)), f.pow(a, 6 * f.theta() + 3));
        assert_eq!(f.power_expr(a, ExpForm::new(3, 1)), f.pow(a, 3 * f.theta() + 1));
    }
}

#[test]
fn trace_is_sum_of_conjugates() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        let mut kernel = 0;
        for a in f.iter() {
            let mut s = f.zero();
            for i in 0..f.degree() as u32 {
                s = f.add(s, f.frob_pow(a, i));
            }
            let c = f.coeffs(s);
            assert!(c[1..].iter().all(|&d| d == 0));
            assert_eq!(f.trace(a), c[0]);
            assert_eq!(f.trace(f.frob_pow(a, 1)), f.trace(a));
            for b in f.iter() {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % 3);
            }
            kernel += (f.trace(a) == 0) as u64;
        }
        assert_eq!(kernel, f.q() / 3);
    }
}

#[test]
fn enumeration_order_and_cap() {
    let f = Field::new(0).unwrap();
    assert_eq!(f.elements().unwrap(), vec![f.zero(), f.one(), f.from_int(2)]);
    let f = Field::new(1).unwrap();
    let els = f.elements().unwrap();
    assert_eq!(els.len(), 27);
    assert_eq!(els[0], f.zero());
    assert_eq!(els[1], f.one());
    let mut d = els.clone();
    d.dedup();
    assert_eq!(d.len(), 27);
    assert_eq!(Field::new(2).unwrap().elements().unwrap().len() as u64, ENUMERATION_CAP);
    assert!(matches!(
        Field::new(3).unwrap().elements(),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn text_form_round_trip() {
    let f = Field::new(1).unwrap();
    for a in f.iter() {
        assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }
    assert!(f.parse("1,2").is_err());
    assert!(f.parse("1,3,0").is_err());
}

fn elem(m: u32) -> impl Strategy<Value = (u32, usize)> {
    (Just(m), 0usize..3usize.pow(2 * m + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn field_axioms_sampled(
        (m, a) in prop_oneof![elem(1), elem(2)],
        b in 0usize..243,
        c in 0usize..243,
    ) {
        let f = Field::new(m).unwrap();
        let q = f.q() as usize;
        let (a, b, c) = (
            f.from_index(a).unwrap(),
            f.from_index(b % q).unwrap(),
            f.from_index(c % q).unwrap(),
        );
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, b), mul_oracle(&f, a, b));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_fixes_everything_at_degree_five(a in 0usize..243) {
        let f = Field::new(2).unwrap();
        let a = f.from_index(a).unwrap();
        prop_assert_eq!(f.pow(a, 243), a);
        prop_assert_eq!(f.frob_pow(a, 5), a);
    }
}
