//! Verification suites. Each suite runs a list of named checks and returns
//! a report; diagnostics (comparisons with transcribed fixtures) are kept
//! apart from the checks and never make a suite fail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chevalley::{display_mismatches, ree_tuple, twisted_f, CommutatorRelation, EntryMismatch, G2Tuple, Mat8};
use crate::classes::{
    all_classes, all_classes_bruteforce, class_count, sigma_kernel, sigma_t, superclass_count,
    superclass_partition, SigmaImage, SuperclassLabel, BRUTE_FORCE_CAP,
};
use crate::error::Result;
use crate::field::{Field, FieldElem, ENUMERATION_CAP};
use crate::group::{GroupElem, SylowGroup};
use crate::irrchar::{build_char_table, diff_against_published, verify_supercharacter_relations, PublishedTableDiff};
use crate::orbits::{
    act_circ, act_dot, act_dot_elem, all_patterns, classify_all, cocycle_f, cocycle_f_matrix, kappa,
    orbit_by_full_scan, Family, Pattern,
};
use crate::superchar::{sampled_cell_check, verify_supercharacter_theory, EXHAUSTIVE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cocycle,
    Matrix,
    Classes,
    Axioms,
    Chartable,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Cocycle,
        Suite::Matrix,
        Suite::Classes,
        Suite::Axioms,
        Suite::Chartable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Matrix => "matrix",
            Suite::Classes => "classes",
            Suite::Axioms => "axioms",
            Suite::Chartable => "chartable",
        }
    }
}

/// Sampling budget and seed for checks that are not exhaustive.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            samples: 100_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn with_counterexample(mut self, c: Option<String>) -> Self {
        self.passed &= c.is_none();
        self.counterexample = c;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayDiagnostic {
    pub triples_checked: usize,
    pub mismatches: Vec<EntryMismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    MatrixDisplay(DisplayDiagnostic),
    PublishedCharacterTable(PublishedTableDiff),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub m: u32,
    pub q: u64,
    pub checks: Vec<CheckResult>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exhaustive pairs at q = 3, otherwise `samples` seeded random pairs.
fn element_pairs(group: &SylowGroup, sampling: Sampling) -> Result<Vec<(GroupElem, GroupElem)>> {
    if group.q() == 3 {
        let els = group.elements()?;
        Ok(els
            .iter()
            .flat_map(|x| els.iter().map(move |y| (*x, *y)))
            .collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        Ok((0..sampling.samples)
            .map(|_| (group.random(&mut rng), group.random(&mut rng)))
            .collect())
    }
}

fn scope(group: &SylowGroup, n: usize) -> String {
    if group.q() == 3 {
        format!("{n} pairs, exhaustive")
    } else {
        format!("{n} sampled pairs")
    }
}

/// A random upper unitriangular matrix.
pub fn random_unitriangular<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Mat8 {
    let q = field.q() as usize;
    let mut m = Mat8::identity();
    for i in 1..=8 {
        for j in i + 1..=8 {
            m.set(i, j, field.from_index(rng.gen_range(0..q)).expect("index below q"));
        }
    }
    m
}

fn first_failure<T: Sync, F>(items: &[T], f: F) -> Option<String>
where
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    crate::par::map(items, f).into_iter().flatten().next()
}

/// Cocycle, trace-form duality, the two actions and the orbit
/// classification.
pub fn cocycle_suite(group: &SylowGroup, sampling: Sampling) -> Result<SuiteReport> {
    let f = group.field();
    let q = group.q();
    let mut checks = Vec::new();
    let pairs = element_pairs(group, sampling)?;
    let fmt = |x: &GroupElem| group.format(x);

    let bad = first_failure(&pairs, |(x, _)| {
        let m = group.matrix(x);
        (cocycle_f(group, x) != cocycle_f_matrix(&m)).then(|| fmt(x))
    });
    checks.push(
        CheckResult::new("cocycle closed form equals matrix read", true, scope(group, pairs.len()))
            .with_counterexample(bad),
    );

    let bad = first_failure(&pairs, |(x, g)| {
        let (mx, mg) = (group.matrix(x), group.matrix(g));
        let lhs = cocycle_f_matrix(&mx.mul(&mg, f));
        let rhs = act_circ(f, &cocycle_f_matrix(&mx), &mg).add(&cocycle_f_matrix(&mg), f);
        (lhs != rhs).then(|| format!("x={} g={}", fmt(x), fmt(g)))
    });
    checks.push(
        CheckResult::new("f(xg) = f(x)∘g + f(g) on U", true, scope(group, pairs.len()))
            .with_counterexample(bad),
    );

    let n_mat = if q == 3 { sampling.samples.min(10_000) } else { sampling.samples.min(20_000) };
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed.wrapping_add(1));
    let mats: Vec<(Mat8, Mat8)> = (0..n_mat)
        .map(|_| (random_unitriangular(f, &mut rng), random_unitriangular(f, &mut rng)))
        .collect();
    let bad = first_failure(&mats, |(x, g)| {
        let lhs = cocycle_f_matrix(&x.mul(g, f));
        let rhs = act_circ(f, &cocycle_f_matrix(x), g).add(&cocycle_f_matrix(g), f);
        (lhs != rhs).then(|| format!("x=\n{}\ng=\n{}", x.render(f), g.render(f)))
    });
    checks.push(
        CheckResult::new(
            "f(xg) = f(x)∘g + f(g) on unitriangular matrices",
            true,
            format!("{n_mat} sampled pairs"),
        )
        .with_counterexample(bad),
    );

    let bad = first_failure(&pairs, |(x, g)| {
        let mg = group.matrix(g);
        let a = cocycle_f(group, x);
        let by_matrix = act_dot(f, &a, &mg).ok()?;
        (by_matrix != act_dot_elem(group, &a, g)).then(|| format!("A={} g={}", a.format(f), fmt(g)))
    });
    checks.push(
        CheckResult::new("A.g closed form equals π(A g^-T)", true, scope(group, pairs.len()))
            .with_counterexample(bad),
    );

    let bad = first_failure(&pairs, |(x, y)| {
        let (mx, my) = (group.matrix(x), group.matrix(y));
        let a = cocycle_f(group, &group.mul(x, y));
        let lhs_circ = act_circ(f, &a, &mx.mul(&my, f));
        let rhs_circ = act_circ(f, &act_circ(f, &a, &mx), &my);
        let lhs_dot = act_dot_elem(group, &a, &group.mul(x, y));
        let rhs_dot = act_dot_elem(group, &act_dot_elem(group, &a, x), y);
        (lhs_circ != rhs_circ || lhs_dot != rhs_dot).then(|| format!("x={} y={}", fmt(x), fmt(y)))
    });
    checks.push(
        CheckResult::new("∘ and . are right actions", true, scope(group, pairs.len()))
            .with_counterexample(bad),
    );

    let bad = first_failure(&pairs, |(x, g)| {
        let a = cocycle_f(group, x);
        let b = cocycle_f(group, &group.mul(g, x));
        let ginv = group.matrix(&group.inv(g));
        let lhs = kappa(f, &act_dot_elem(group, &a, g), &b);
        let rhs = kappa(f, &a, &act_circ(f, &b, &ginv));
        (lhs != rhs).then(|| format!("A={} B={} g={}", a.format(f), b.format(f), fmt(g)))
    });
    checks.push(
        CheckResult::new("κ(A.g, B) = κ(A, B∘g⁻¹)", true, scope(group, pairs.len()))
            .with_counterexample(bad),
    );

    if q <= EXHAUSTIVE_CAP {
        let els = group.elements()?;
        let mut images: Vec<Pattern> = els.iter().map(|u| cocycle_f(group, u)).collect();
        images.sort_unstable();
        images.dedup();
        checks.push(CheckResult::new(
            "f is a bijection U → V",
            images.len() as u64 == group.order(),
            format!("{} distinct images", images.len()),
        ));

        let degenerate = all_patterns(f)
            .filter(|a| *a != Pattern::ZERO)
            .find(|a| all_patterns(f).all(|b| kappa(f, a, &b).is_zero()));
        checks.push(
            CheckResult::new("κ is non-degenerate", true, "all patterns")
                .with_counterexample(degenerate.map(|a| a.format(f))),
        );
    }

    if q <= ENUMERATION_CAP {
        let orbits = classify_all(group)?;
        let mut bad = None;
        for r in &orbits {
            let (size, stab) = match r.family {
                Family::F4 => (q * q, q),
                Family::F3 => (q, q * q),
                Family::F1 | Family::Zero => (1, q * q * q),
            };
            if r.size() as u64 != size || r.stabilizer_order != stab {
                bad = Some(format!(
                    "{}: size {} stabilizer {}",
                    r.verge.format(f),
                    r.size(),
                    r.stabilizer_order
                ));
                break;
            }
        }
        checks.push(
            CheckResult::new(
                "orbit sizes and stabilizers by family",
                orbits.len() as u64 == superclass_count(q),
                format!("{} orbits partition V, one verge each", orbits.len()),
            )
            .with_counterexample(bad),
        );
        if q <= 27 {
            let bad = first_failure(&orbits, |r| {
                let full = orbit_by_full_scan(group, &r.verge).ok()?;
                (full != *r).then(|| r.verge.format(f))
            });
            checks.push(
                CheckResult::new("orbit sweep equals scan over all of U", true, "every verge")
                    .with_counterexample(bad),
            );
        }
    }

    Ok(SuiteReport {
        suite: Suite::Cocycle,
        m: f.m(),
        q,
        checks,
        diagnostics: Vec::new(),
    })
}

/// Tuples of G2^syl(3) fixed by the twisted map, and whether they are the
/// images of `Y(t1,t3,t4)`.
pub fn fixed_point_scan(field: &Field) -> Result<(usize, bool)> {
    let q = field.q() as usize;
    let total = q.pow(6);
    let mut fixed = Vec::new();
    for n in 0..total {
        let mut k = n;
        let mut t = [FieldElem::ZERO; 6];
        for slot in t.iter_mut().rev() {
            *slot = field.from_index(k % q)?;
            k /= q;
        }
        let y = G2Tuple(t);
        if twisted_f(field, &y) == y {
            fixed.push(y);
        }
    }
    let mut expected: Vec<G2Tuple> = Vec::new();
    for t1 in field.iter() {
        for t3 in field.iter() {
            for t4 in field.iter() {
                expected.push(ree_tuple(field, t1, t3, t4));
            }
        }
    }
    let key = |y: &G2Tuple| y.0.map(|e| e.index());
    fixed.sort_by_key(key);
    expected.sort_by_key(key);
    Ok((fixed.len(), fixed == expected))
}

/// Group laws against 8×8 matrices, commutator relations of root
/// elements, the fixed points of the twisted map, and the transcribed
/// matrix display (diagnostic).
pub fn matrix_suite(group: &SylowGroup, sampling: Sampling) -> Result<SuiteReport> {
    let f = group.field();
    let q = group.q();
    let mut checks = Vec::new();
    let fmt = |x: &GroupElem| group.format(x);

    if q == 3 {
        let (n, same) = fixed_point_scan(f)?;
        checks.push(CheckResult::new(
            "fixed points of the twisted map are exactly Y(t1,t3,t4)",
            n == 27 && same,
            format!("{n} of 729 tuples fixed"),
        ));
    }

    let pairs = element_pairs(group, sampling)?;
    let bad = first_failure(&pairs, |(x, y)| {
        let (mx, my) = (group.matrix(x), group.matrix(y));
        let prod = mx.mul(&my, f);
        let ok = prod == group.matrix(&group.mul(x, y))
            && mx.unitriangular_inverse(f).ok()? == group.matrix(&group.inv(x))
            && Mat8::commutator(&mx, &my, f).ok()? == group.matrix(&group.commutator(x, y))
            && my.mul(&mx, f).mul(&my.unitriangular_inverse(f).ok()?, f)
                == group.matrix(&group.conjugate(x, y))
            && group.from_matrix(&prod).ok()? == group.mul(x, y);
        (!ok).then(|| format!("x={} y={}", fmt(x), fmt(y)))
    });
    checks.push(
        CheckResult::new(
            "mul, inv, commutator, conjugate agree with matrices",
            true,
            scope(group, pairs.len()),
        )
        .with_counterexample(bad),
    );

    let scalar_pairs: Vec<(FieldElem, FieldElem)> = if q == 3 {
        f.iter().flat_map(|t| f.iter().map(move |s| (t, s))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed.wrapping_add(2));
        let n = sampling.samples.min(10_000).max(1);
        (0..n)
            .map(|_| {
                let mut e = || f.from_index(rng.gen_range(0..q as usize)).expect("index below q");
                (e(), e())
            })
            .collect()
    };
    for rel in CommutatorRelation::ALL {
        let bad = first_failure(&scalar_pairs, |&(t, s)| match rel.holds(f, t, s) {
            Ok(true) => None,
            _ => Some(format!("t={} s={}", f.format(t), f.format(s))),
        });
        checks.push(
            CheckResult::new(
                &format!("commutator relation {rel:?}"),
                true,
                format!("{} parameter pairs", scalar_pairs.len()),
            )
            .with_counterexample(bad),
        );
    }

    let triples: Vec<GroupElem> = if q == 3 {
        group.elements()?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed.wrapping_add(3));
        (0..sampling.samples.min(2_000).max(1))
            .map(|_| group.random(&mut rng))
            .collect()
    };
    let mismatches: Vec<EntryMismatch> = crate::par::map(&triples, |x| display_mismatches(f, x.t1, x.t3, x.t4))
        .into_iter()
        .flatten()
        .collect();

    Ok(SuiteReport {
        suite: Suite::Matrix,
        m: f.m(),
        q,
        checks,
        diagnostics: vec![Diagnostic::MatrixDisplay(DisplayDiagnostic {
            triples_checked: triples.len(),
            mismatches,
        })],
    })
}

/// `ς_t` kernels and images, conjugacy classes (closed form and, for
/// q ≤ 27, brute force), and the superclass partition.
pub fn classes_suite(group: &SylowGroup, _sampling: Sampling) -> Result<SuiteReport> {
    let f = group.field();
    let q = group.q();
    let theta_sq = q / 3;
    let mut checks = Vec::new();

    let nonzero: Vec<FieldElem> = f.nonzero().collect();
    let bad = first_failure(&nonzero, |&t| {
        let mut want = vec![FieldElem::ZERO, t, f.neg(t)];
        want.sort();
        let ker = sigma_kernel(f, t).ok()?;
        let im = SigmaImage::new(f, t).ok()?;
        (ker != want || im.len() as u64 != theta_sq).then(|| f.format(t))
    });
    checks.push(
        CheckResult::new(
            "ker ς_t = {0, t, -t} and |im ς_t| = q/3",
            true,
            format!("{} values of t", nonzero.len()),
        )
        .with_counterexample(bad),
    );

    if q <= 27 {
        let bad = first_failure(&nonzero, |&t| {
            for s in f.iter() {
                for r in f.iter() {
                    let lhs = sigma_t(f, t, f.add(s, r)).ok()?;
                    let rhs = f.add(sigma_t(f, t, s).ok()?, sigma_t(f, t, r).ok()?);
                    if lhs != rhs {
                        return Some(format!("t={} s={} r={}", f.format(t), f.format(s), f.format(r)));
                    }
                }
            }
            None
        });
        checks.push(
            CheckResult::new("ς_t is additive", true, "exhaustive").with_counterexample(bad),
        );
    }

    if q <= ENUMERATION_CAP {
        let closed = all_classes(group)?;
        let total: usize = closed.iter().map(|c| c.size).sum();
        checks.push(CheckResult::new(
            "class count 5q-4 (closed form)",
            closed.len() as u64 == class_count(q) && total as u64 == group.order(),
            format!("{} classes, sizes sum to {total}", closed.len()),
        ));

        if q <= BRUTE_FORCE_CAP {
            let brute = all_classes_bruteforce(group)?;
            let mut sizes: Vec<u64> = brute.iter().map(|c| c.size as u64).collect();
            sizes.sort_unstable();
            let mut want = vec![1u64; q as usize];
            want.extend(std::iter::repeat(q).take(q as usize - 1));
            want.extend(std::iter::repeat(q * theta_sq).take(3 * (q as usize - 1)));
            want.sort_unstable();
            checks.push(CheckResult::new(
                "class count 5q-4 (brute force)",
                brute.len() as u64 == class_count(q),
                format!("{} classes", brute.len()),
            ));
            checks.push(CheckResult::new(
                "class sizes 1, q, q·3^(2m)",
                sizes == want,
                format!("{} singletons", sizes.iter().filter(|&&s| s == 1).count()),
            ));
            checks.push(CheckResult::new(
                "closed-form classes equal brute-force classes",
                brute == closed,
                "",
            ));
        }

        let partition = superclass_partition(group)?;
        checks.push(CheckResult::new(
            "superclass count 3(q-1)+1",
            partition.parts.len() as u64 == superclass_count(q),
            format!("{} superclasses", partition.parts.len()),
        ));
        let bad = closed
            .iter()
            .find(|c| {
                let l = SuperclassLabel::of(&c.representative);
                c.members.iter().any(|x| SuperclassLabel::of(x) != l)
            })
            .map(|c| group.format(&c.representative));
        checks.push(
            CheckResult::new("each class lies in one superclass", true, "")
                .with_counterexample(bad),
        );
    } else {
        checks.push(CheckResult::new(
            "class and superclass counts (formula only)",
            true,
            format!("{} classes, {} superclasses", class_count(q), superclass_count(q)),
        ));
    }

    Ok(SuiteReport {
        suite: Suite::Classes,
        m: f.m(),
        q,
        checks,
        diagnostics: Vec::new(),
    })
}

/// Supercharacter-theory axioms and the closed-form table, exhaustive for
/// q ≤ 27 and sampled above.
pub fn axioms_suite(group: &SylowGroup, sampling: Sampling) -> Result<SuiteReport> {
    let f = group.field();
    let q = group.q();
    let mut checks = Vec::new();
    if q <= EXHAUSTIVE_CAP {
        let r = verify_supercharacter_theory(group)?;
        checks.push(CheckResult::new(
            "(a) as many supercharacters as superclasses",
            r.counts_match,
            format!("{} supercharacters, {} superclasses", r.characters, r.superclasses),
        ));
        checks.push(
            CheckResult::new("(b) constant on superclasses", true, "every element")
                .with_counterexample(r.constancy_violation.as_ref().map(|v| format!("{v:?}"))),
        );
        checks.push(
            CheckResult::new("(c) pairwise orthogonal", true, "exact sums over U")
                .with_counterexample(r.non_orthogonal.first().map(|p| format!("{p:?}"))),
        );
        checks.push(CheckResult::new("(d) {1} is a superclass", r.identity_is_superclass, ""));
        checks.push(
            CheckResult::new("table equals closed-form cells", true, "every cell")
                .with_counterexample(r.table_mismatches.first().map(|c| format!("{c:?}"))),
        );
    } else {
        let n = sampling.samples.min(2_000).max(1);
        let bad = sampled_cell_check(group, n, sampling.seed);
        checks.push(
            CheckResult::new("sampled cells equal closed form", true, format!("{n} sampled cells"))
                .with_counterexample(bad.first().map(|c| format!("{c:?}"))),
        );
    }
    Ok(SuiteReport {
        suite: Suite::Axioms,
        m: f.m(),
        q,
        checks,
        diagnostics: Vec::new(),
    })
}

/// The q = 3 character table, its orthogonality, the supercharacter
/// decompositions, and the published-table diff (diagnostic). Runs at
/// q = 3 whatever the group passed.
pub fn chartable_suite() -> Result<SuiteReport> {
    let group = SylowGroup::new(0)?;
    let mut checks = Vec::new();
    let table = build_char_table(&group);
    let (table, diag) = match table {
        Ok(t) => {
            let degrees: Vec<i128> = t.rows.iter().map(|r| r.degree).collect();
            let linear = degrees.iter().filter(|&&d| d == 1).count();
            checks.push(CheckResult::new(
                "11 irreducible characters, orthogonal, Σ deg² = 27",
                t.rows.len() == 11 && linear == 9,
                format!("{linear} linear, {} of degree 3", degrees.len() - linear),
            ));
            let diff = diff_against_published(&group, &t)?;
            (Some(t), vec![Diagnostic::PublishedCharacterTable(diff)])
        }
        Err(e) => {
            checks.push(CheckResult::new("character table", false, e.to_string()));
            (None, Vec::new())
        }
    };
    if let Some(t) = table {
        let rel = verify_supercharacter_relations(&group, &t)?;
        let bad = rel
            .decompositions
            .iter()
            .find(|d| !(d.consistent && d.expected_shape))
            .map(|d| format!("{d:?}"));
        checks.push(
            CheckResult::new(
                "supercharacters decompose as trivial, linear, 3 linear, 3·induced",
                true,
                format!("{} supercharacters", rel.decompositions.len()),
            )
            .with_counterexample(bad),
        );
    }
    Ok(SuiteReport {
        suite: Suite::Chartable,
        m: 0,
        q: 3,
        checks,
        diagnostics: diag,
    })
}

pub fn run_suite(suite: Suite, group: &SylowGroup, sampling: Sampling) -> Result<SuiteReport> {
    match suite {
        Suite::Cocycle => cocycle_suite(group, sampling),
        Suite::Matrix => matrix_suite(group, sampling),
        Suite::Classes => classes_suite(group, sampling),
        Suite::Axioms => axioms_suite(group, sampling),
        Suite::Chartable => chartable_suite(),
    }
}
