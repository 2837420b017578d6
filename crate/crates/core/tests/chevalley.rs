use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ree_syl::chevalley::{
    display_mismatches, g2_tuple_to_matrix, matrix_to_g2_tuple, ree_matrix, ree_tuple, root_element,
    twisted_f, CommutatorRelation, G2Tuple, Mat8, RootMatrixTable,
};
use ree_syl::{Error, Field, FieldElem, SylowGroup};

fn all_tuples(f: &Field) -> impl Iterator<Item = G2Tuple> + '_ {
    let q = f.q() as usize;
    (0..q.pow(6)).map(move |mut n| {
        let mut t = [FieldElem::ZERO; 6];
        for c in t.iter_mut() {
            *c = f.from_index(n % q).unwrap();
            n /= q;
        }
        G2Tuple(t)
    })
}

fn random_tuple(f: &Field, rng: &mut impl Rng) -> G2Tuple {
    let q = f.q() as usize;
    G2Tuple(std::array::from_fn(|_| f.from_index(rng.gen_range(0..q)).unwrap()))
}

fn tuple_product(f: &Field, x: &G2Tuple, y: &G2Tuple) -> G2Tuple {
    let m = g2_tuple_to_matrix(f, x).mul(&g2_tuple_to_matrix(f, y), f);
    matrix_to_g2_tuple(f, &m).unwrap()
}

#[test]
fn root_matrices_match_their_entry_lists() {
    let table = RootMatrixTable::get();
    let beta = table.root(2);
    for i in 0..8 {
        for j in 0..8 {
            let expected = match (i + 1, j + 1) {
                (2, 3) => 1,
                (6, 7) => -1,
                _ => 0,
            };
            assert_eq!(beta[i][j], expected);
        }
    }
    for (k, sq) in table.squares.iter().enumerate() {
        let cube = ree_syl::chevalley::int_matmul(sq, &table.roots[k]);
        assert!(cube.iter().flatten().all(|&x| x == 0), "e_{} cubed", k + 1);
        let long = matches!(k + 1, 2 | 5 | 6);
        assert_eq!(sq.iter().flatten().all(|&x| x == 0), long, "e_{} squared", k + 1);
    }
}

#[test]
fn root_elements_are_one_parameter_subgroups() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        for i in 1..=6 {
            assert_eq!(root_element(&f, i, f.zero()), Mat8::identity());
            for t in f.iter() {
                assert!(root_element(&f, i, t).is_upper_unitriangular());
                for s in f.iter() {
                    let lhs = root_element(&f, i, t).mul(&root_element(&f, i, s), &f);
                    assert_eq!(lhs, root_element(&f, i, f.add(t, s)));
                }
            }
        }
    }
}

#[test]
fn tuple_map_is_injective_and_round_trips_at_q3() {
    let f = Field::new(0).unwrap();
    let mut seen = HashSet::new();
    for y in all_tuples(&f) {
        let m = g2_tuple_to_matrix(&f, &y);
        assert!(seen.insert(m.clone()));
        assert_eq!(matrix_to_g2_tuple(&f, &m).unwrap(), y);
    }
    assert_eq!(seen.len(), 729);
    assert_eq!(matrix_to_g2_tuple(&f, &Mat8::identity()).unwrap(), G2Tuple::zero());
}

#[test]
fn perturbed_matrix_is_rejected() {
    let f = Field::new(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let y = random_tuple(&f, &mut rng);
        let mut m = g2_tuple_to_matrix(&f, &y);
        // (1,5) always equals (1,4) on the image; break that.
        m.set(1, 5, f.add(m.entry(1, 5), f.one()));
        assert!(matches!(matrix_to_g2_tuple(&f, &m), Err(Error::NotInG2(_))));
    }
    let mut lower = Mat8::identity();
    lower.set(3, 1, f.one());
    assert!(matrix_to_g2_tuple(&f, &lower).is_err());
}

#[test]
fn twisted_map_fixes_exactly_the_ree_tuples_at_q3() {
    let f = Field::new(0).unwrap();
    let fixed: Vec<G2Tuple> = all_tuples(&f).filter(|y| twisted_f(&f, y) == *y).collect();
    assert_eq!(fixed.len(), 27);
    let expected: HashSet<G2Tuple> = SylowGroup::new(0)
        .unwrap()
        .elements()
        .unwrap()
        .iter()
        .map(|x| ree_tuple(&f, x.t1, x.t3, x.t4))
        .collect();
    assert_eq!(fixed.into_iter().collect::<HashSet<_>>(), expected);
}

#[test]
fn twisted_map_is_a_bijection_at_q3() {
    let f = Field::new(0).unwrap();
    let images: HashSet<G2Tuple> = all_tuples(&f).map(|y| twisted_f(&f, &y)).collect();
    assert_eq!(images.len(), 729);
    assert_eq!(twisted_f(&f, &G2Tuple::zero()), G2Tuple::zero());
}

#[test]
fn twisted_map_respects_products() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let x = random_tuple(&f, &mut rng);
            let y = random_tuple(&f, &mut rng);
            assert_eq!(
                twisted_f(&f, &tuple_product(&f, &x, &y)),
                tuple_product(&f, &twisted_f(&f, &x), &twisted_f(&f, &y))
            );
        }
    }
}

#[test]
fn ree_tuples_are_fixed_at_q27() {
    let f = Field::new(1).unwrap();
    for a in f.iter() {
        for b in f.iter() {
            for c in f.iter() {
                let y = ree_tuple(&f, a, b, c);
                assert_eq!(twisted_f(&f, &y), y);
            }
        }
    }
}

#[test]
fn non_ree_tuples_are_moved_at_q27() {
    let f = Field::new(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut moved = 0;
    while moved < 100_000 {
        let y = random_tuple(&f, &mut rng);
        if y == ree_tuple(&f, y.t(1), y.t(3), y.t(4)) {
            continue;
        }
        assert_ne!(twisted_f(&f, &y), y);
        moved += 1;
    }
}

#[test]
fn commutator_relations_exhaustive() {
    for m in 0..=1 {
        check_all_commutator_pairs(&Field::new(m).unwrap());
    }
}

fn check_all_commutator_pairs(f: &Field) {
    for rel in CommutatorRelation::ALL {
        for t in f.iter() {
            for s in f.iter() {
                assert!(rel.holds(f, t, s).unwrap(), "{rel:?} at t={t:?} s={s:?}");
            }
        }
    }
}

#[test]
fn display_agrees_with_root_product() {
    for m in 0..=1 {
        let f = Field::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = f.q() as usize;
        for _ in 0..500 {
            let e = |rng: &mut ChaCha8Rng| f.from_index(rng.gen_range(0..q)).unwrap();
            let (a, b, c) = (e(&mut rng), e(&mut rng), e(&mut rng));
            assert!(display_mismatches(&f, a, b, c).is_empty());
        }
    }
}

#[test]
fn render_is_eight_rows() {
    let f = Field::new(0).unwrap();
    let s = ree_matrix(&f, f.one(), f.zero(), f.zero()).render(&f);
    assert_eq!(s.lines().count(), 8);
    assert!(s.lines().next().unwrap().starts_with("1 1 "));
}

proptest! {
    #[test]
    fn round_trip_at_q27(idx in proptest::array::uniform6(0usize..27)) {
        let f = Field::new(1).unwrap();
        let y = G2Tuple(idx.map(|i| f.from_index(i).unwrap()));
        let m = g2_tuple_to_matrix(&f, &y);
        prop_assert!(m.is_upper_unitriangular());
        prop_assert_eq!(matrix_to_g2_tuple(&f, &m).unwrap(), y);
    }
}
