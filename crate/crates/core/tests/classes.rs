use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use ree_syl::classes::{
    all_classes, all_classes_bruteforce, c1_part, class_count, class_of, class_representative,
    sigma_kernel, sigma_t, superclass_count, superclass_partition, transversal_t, SigmaImage,
    SuperclassLabel,
};
use ree_syl::{Error, GroupElem, SylowGroup};

fn g(m: u32) -> SylowGroup {
    SylowGroup::new(m).unwrap()
}

/// Classes via `g x g⁻¹` computed with `mul` and `inv` only.
fn classes_by_products(u: &SylowGroup) -> Vec<BTreeSet<GroupElem>> {
    let els = u.elements().unwrap();
    let inverses: Vec<GroupElem> = els.iter().map(|x| u.inv(x)).collect();
    let mut seen = vec![false; els.len()];
    let mut out = Vec::new();
    for x in &els {
        if seen[u.index(x)] {
            continue;
        }
        let class: BTreeSet<GroupElem> = els
            .iter()
            .zip(&inverses)
            .map(|(h, hi)| u.mul(&u.mul(h, x), hi))
            .collect();
        for y in &class {
            seen[u.index(y)] = true;
        }
        out.push(class);
    }
    out
}

#[test]
fn sigma_kernel_and_image() {
    for m in 0..=2 {
        let u = g(m);
        let f = u.field();
        for t in f.nonzero() {
            let mut expected = vec![f.zero(), t, f.neg(t)];
            expected.sort();
            assert_eq!(sigma_kernel(f, t).unwrap(), expected);
            assert_eq!(SigmaImage::new(f, t).unwrap().len() as u64, 3u64.pow(2 * m));
        }
        assert!(matches!(sigma_t(f, f.zero(), f.one()), Err(Error::Domain { .. })));
    }
}

#[test]
fn sigma_is_additive() {
    let u = g(1);
    let f = u.field();
    for t in f.nonzero() {
        let image = SigmaImage::new(f, t).unwrap();
        for s in f.iter() {
            for r in f.iter() {
                let lhs = sigma_t(f, t, f.add(s, r)).unwrap();
                assert_eq!(lhs, f.add(sigma_t(f, t, s).unwrap(), sigma_t(f, t, r).unwrap()));
            }
            assert!(image.contains(sigma_t(f, t, s).unwrap()));
        }
    }
}

#[test]
fn transversals() {
    let u = g(0);
    let f = u.field();
    for t in f.nonzero() {
        assert_eq!(transversal_t(f, t).unwrap(), f.elements().unwrap());
    }
    for m in 1..=2 {
        let u = g(m);
        let f = u.field();
        for t in f.nonzero() {
            let image = SigmaImage::new(f, t).unwrap();
            let tr = transversal_t(f, t).unwrap();
            assert_eq!(tr.len(), 3);
            assert_eq!(tr[0], f.zero());
            for (i, &a) in tr.iter().enumerate() {
                assert_eq!(image.coset_min(f, a), a);
                for &b in &tr[i + 1..] {
                    assert!(!image.contains(f.sub(a, b)));
                }
            }
        }
    }
    assert!(transversal_t(g(0).field(), g(0).field().zero()).is_err());
}

#[test]
fn closed_form_matches_products_q3_and_q27() {
    for m in 0..=1 {
        let u = g(m);
        let oracle: BTreeSet<BTreeSet<GroupElem>> = classes_by_products(&u).into_iter().collect();
        let closed: BTreeSet<BTreeSet<GroupElem>> = all_classes(&u)
            .unwrap()
            .into_iter()
            .map(|c| c.members.into_iter().collect())
            .collect();
        assert_eq!(closed, oracle);
        let brute: BTreeSet<BTreeSet<GroupElem>> = all_classes_bruteforce(&u)
            .unwrap()
            .into_iter()
            .map(|c| c.members.into_iter().collect())
            .collect();
        assert_eq!(brute, oracle);
        assert_eq!(oracle.len() as u64, class_count(u.q()));
    }
}

#[test]
fn class_size_multisets() {
    let sizes = |m: u32| -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in all_classes_bruteforce(&g(m)).unwrap() {
            *h.entry(c.size).or_default() += 1;
        }
        h
    };
    assert_eq!(sizes(0), BTreeMap::from([(1, 3), (3, 8)]));
    // q central, q-1 of size q, 3(q-1) of size q·3^{2m}
    assert_eq!(sizes(1), BTreeMap::from([(1, 27), (27, 26), (243, 78)]));
}

#[test]
fn named_classes() {
    let u = g(1);
    let f = u.field();
    assert_eq!(class_of(&u, &u.identity()).members, vec![u.identity()]);
    for t in f.nonzero() {
        assert_eq!(class_of(&u, &u.c(t)).size, 1);
        let expected: Vec<GroupElem> = f.iter().map(|s| GroupElem::new(f.zero(), t, s)).collect();
        assert_eq!(class_of(&u, &u.b(t)).members, expected);
    }
}

#[test]
fn representatives_are_least_members() {
    let u = g(1);
    for x in u.elements().unwrap().into_iter().step_by(7) {
        let c = class_of(&u, &x);
        assert!(c.members.contains(&x));
        assert_eq!(class_representative(&u, &x), c.representative);
        assert_eq!(c.representative, *c.members.iter().min().unwrap());
    }
}

#[test]
fn enumeration_caps() {
    assert!(all_classes_bruteforce(&g(2)).is_err());
    assert_eq!(all_classes(&g(2)).unwrap().len() as u64, class_count(243));
    assert!(all_classes(&g(3)).is_err());
}

#[test]
fn superclasses_partition_and_refine() {
    for m in 0..=1 {
        let u = g(m);
        let q = u.q();
        let part = superclass_partition(&u).unwrap();
        assert_eq!(part.parts.len() as u64, superclass_count(q));
        let total: usize = part.parts.iter().map(|p| p.members.len()).sum();
        assert_eq!(total as u64, u.order());
        assert_eq!(part.part(&SuperclassLabel::C0).unwrap().members, vec![u.identity()]);
        for p in &part.parts {
            for x in &p.members {
                assert_eq!(SuperclassLabel::of(x), p.label);
            }
        }
        for c in all_classes_bruteforce(&u).unwrap() {
            let l = SuperclassLabel::of(&c.representative);
            assert!(c.members.iter().all(|x| SuperclassLabel::of(x) == l));
        }
        for l in SuperclassLabel::all(u.field()) {
            assert_eq!(SuperclassLabel::of(&l.representative(&u)), l);
        }
    }
}

#[test]
fn superclass_labels_format() {
    let u = g(0);
    let f = u.field();
    let names: Vec<String> = SuperclassLabel::all(f).iter().map(|l| l.format(f)).collect();
    assert_eq!(names, ["C0", "C1(1)", "C1(2)", "C3(1)", "C3(2)", "C4(1)", "C4(2)"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any choice of coset representatives yields the same superclass.
    #[test]
    fn c1_independent_of_transversal(t1 in 1usize..27, picks in proptest::array::uniform3(0usize..9)) {
        let u = g(1);
        let f = u.field();
        let t1 = f.from_index(t1).unwrap();
        let image = SigmaImage::new(f, t1).unwrap();
        let least = transversal_t(f, t1).unwrap();
        let other: Vec<_> = least
            .iter()
            .zip(picks)
            .map(|(&r, k)| f.add(r, image.elements()[k]))
            .collect();
        prop_assert_eq!(c1_part(&u, t1, &other), c1_part(&u, t1, &least));
    }

    #[test]
    fn class_of_is_conjugation_invariant(x in 0usize..19683, h in 0usize..19683) {
        let u = g(1);
        let (x, h) = (u.from_index(x), u.from_index(h));
        let y = u.conjugate(&x, &h);
        prop_assert_eq!(class_of(&u, &y), class_of(&u, &x));
    }
}
