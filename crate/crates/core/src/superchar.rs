//! Supercharacters (characters of the orbit modules of verge patterns), the
//! supercharacter table, and a check of the supercharacter-theory axioms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{superclass_partition, SuperclassLabel, SuperclassPartition};
use crate::cyclo::{theta_char, Eisenstein};
use crate::error::{Error, Result};
use crate::field::{Field, ENUMERATION_CAP};
use crate::group::{GroupElem, SylowGroup};
use crate::orbits::{is_verge, orbit_character, orbit_of, verge_patterns, Family, OrbitRecord, Pattern};

/// Largest field for which characters are tabulated on every element of `U`.
pub const EXHAUSTIVE_CAP: u64 = 27;

/// Character of the orbit module of `verge` at `u`.
pub fn supercharacter(group: &SylowGroup, verge: &Pattern, u: &GroupElem) -> Result<Eisenstein> {
    if !is_verge(verge) {
        return Err(Error::NotVerge(verge.format(group.field())));
    }
    Ok(orbit_character(group, &orbit_of(group, verge), u))
}

/// Row label, e.g. `Psi12(2)`.
pub fn row_label(field: &Field, verge: &Pattern) -> String {
    match Family::of(verge) {
        Family::Zero => "Psi0".to_string(),
        Family::F1 => format!("Psi12({})", field.format(verge.a12)),
        Family::F3 => format!("Psi13({})", field.format(verge.a13)),
        Family::F4 => format!("Psi14({})", field.format(verge.a14)),
    }
}

/// The closed-form table entry of the supercharacter of `verge` on the
/// superclass `col`.
pub fn expected_cell(field: &Field, verge: &Pattern, col: &SuperclassLabel) -> Eisenstein {
    let q = field.q() as i128;
    let one = Eisenstein::ONE;
    match (Family::of(verge), *col) {
        (Family::Zero, _) => one,
        (Family::F1, SuperclassLabel::C1(t1)) => theta_char(field, field.mul(verge.a12, t1)),
        (Family::F1, _) => one,
        (Family::F3, SuperclassLabel::C1(_)) => Eisenstein::ZERO,
        (Family::F3, SuperclassLabel::C3(t3)) => {
            theta_char(field, field.neg(field.mul(verge.a13, t3))).scale(q)
        }
        (Family::F3, _) => Eisenstein::int(q),
        (Family::F4, SuperclassLabel::C0) => Eisenstein::int(q * q),
        (Family::F4, SuperclassLabel::C4(t4)) => {
            theta_char(field, field.neg(field.mul(verge.a14, t4))).scale(q * q)
        }
        (Family::F4, _) => Eisenstein::ZERO,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperRow {
    pub verge: Pattern,
    pub label: String,
    pub family: Family,
    /// One value per column, in column order.
    pub values: Vec<Eisenstein>,
}

impl SuperRow {
    pub fn degree(&self) -> Eisenstein {
        self.values[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperTable {
    pub q: u64,
    pub columns: Vec<SuperclassLabel>,
    pub column_labels: Vec<String>,
    pub column_sizes: Vec<u64>,
    pub rows: Vec<SuperRow>,
}

/// How constancy on superclasses is checked while building the table.
#[derive(Clone, Copy, Debug)]
pub enum Constancy {
    /// Every element of every superclass (q ≤ 27).
    Full,
    /// `samples` random elements per row, from a seeded generator.
    Sampled { samples: usize, seed: u64 },
}

fn column_size(q: u64, label: &SuperclassLabel) -> u64 {
    match label {
        SuperclassLabel::C0 | SuperclassLabel::C4(_) => 1,
        SuperclassLabel::C3(_) => q,
        SuperclassLabel::C1(_) => q * q,
    }
}

/// Every supercharacter on every element of `U`, indexed by
/// [`SylowGroup::index`].
#[derive(Clone, Debug)]
pub struct SuperValues {
    pub verges: Vec<Pattern>,
    pub values: Vec<Vec<Eisenstein>>,
}

/// Tabulates every supercharacter on all of `U` (q ≤ 27).
pub fn supercharacter_values(group: &SylowGroup) -> Result<SuperValues> {
    let q = group.q();
    if q > EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded {
            what: "supercharacter tabulation",
            q,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let elements = group.elements()?;
    let verges = verge_patterns(group.field());
    let orbits: Vec<OrbitRecord> = verges.iter().map(|v| orbit_of(group, v)).collect();
    let values = crate::par::map(&orbits, |r| {
        elements.iter().map(|u| orbit_character(group, r, u)).collect()
    });
    Ok(SuperValues { verges, values })
}

/// The supercharacter table, after checking constancy on superclasses.
pub fn build_supertable(group: &SylowGroup, constancy: Constancy) -> Result<SuperTable> {
    let f = group.field();
    let q = group.q();
    if q > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "supercharacter table",
            q,
            cap: ENUMERATION_CAP,
        });
    }
    let columns = SuperclassLabel::all(f);
    let reps: Vec<GroupElem> = columns.iter().map(|c| c.representative(group)).collect();
    let verges = verge_patterns(f);

    let rows: Vec<SuperRow> = match constancy {
        Constancy::Full => {
            let table = supercharacter_values(group)?;
            let partition = superclass_partition(group)?;
            check_constancy(group, &table, &partition)?;
            table
                .verges
                .iter()
                .zip(&table.values)
                .map(|(v, vals)| SuperRow {
                    verge: *v,
                    label: row_label(f, v),
                    family: Family::of(v),
                    values: reps.iter().map(|r| vals[group.index(r)]).collect(),
                })
                .collect()
        }
        Constancy::Sampled { samples, seed } => {
            let built = crate::par::map(&verges, |v| -> Result<SuperRow> {
                let orbit = orbit_of(group, v);
                let values: Vec<Eisenstein> =
                    reps.iter().map(|r| orbit_character(group, &orbit, r)).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (v.index(q as usize) as u64));
                for _ in 0..samples {
                    let u = group.random(&mut rng);
                    let col = columns
                        .iter()
                        .position(|c| *c == SuperclassLabel::of(&u))
                        .expect("every element has a label");
                    let got = orbit_character(group, &orbit, &u);
                    if got != values[col] {
                        return Err(Error::Invariant(format!(
                            "{} is {} at {} but {} at {}",
                            row_label(f, v),
                            got,
                            group.format(&u),
                            values[col],
                            group.format(&reps[col])
                        )));
                    }
                }
                Ok(SuperRow {
                    verge: *v,
                    label: row_label(f, v),
                    family: Family::of(v),
                    values,
                })
            });
            built.into_iter().collect::<Result<_>>()?
        }
    };

    Ok(SuperTable {
        q,
        column_labels: columns.iter().map(|c| c.format(f)).collect(),
        column_sizes: columns.iter().map(|c| column_size(q, c)).collect(),
        columns,
        rows,
    })
}

fn check_constancy(
    group: &SylowGroup,
    table: &SuperValues,
    partition: &SuperclassPartition,
) -> Result<()> {
    match first_nonconstant(group, table, partition) {
        None => Ok(()),
        Some(c) => Err(Error::Invariant(format!(
            "{} differs between {} and {}",
            c.row, c.first, c.second
        ))),
    }
}

/// A supercharacter taking two values on one superclass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstancyViolation {
    pub row: String,
    pub superclass: String,
    pub first: String,
    pub second: String,
}

fn first_nonconstant(
    group: &SylowGroup,
    table: &SuperValues,
    partition: &SuperclassPartition,
) -> Option<ConstancyViolation> {
    let f = group.field();
    for (v, vals) in table.verges.iter().zip(&table.values) {
        for part in &partition.parts {
            let x0 = &part.members[0];
            let v0 = vals[group.index(x0)];
            if let Some(y) = part.members.iter().find(|y| vals[group.index(y)] != v0) {
                return Some(ConstancyViolation {
                    row: row_label(f, v),
                    superclass: part.label.format(f),
                    first: group.format(x0),
                    second: group.format(y),
                });
            }
        }
    }
    None
}

/// `Σ_u r1(u) · conj(r2(u))` over value vectors indexed by element.
pub fn inner_product(r1: &[Eisenstein], r2: &[Eisenstein]) -> Eisenstein {
    r1.iter().zip(r2).map(|(&x, &y)| x * y.conj()).sum()
}

/// `Σ_u r1(u) · conj(r2(u))` over all of `U`.
pub fn inner_product_fn<F, G>(group: &SylowGroup, r1: F, r2: G) -> Result<Eisenstein>
where
    F: Fn(&GroupElem) -> Eisenstein,
    G: Fn(&GroupElem) -> Eisenstein,
{
    Ok(group.elements()?.iter().map(|u| r1(u) * r2(u).conj()).sum())
}

/// A cell whose computed value differs from the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub row: String,
    pub column: String,
    pub computed: Eisenstein,
    pub expected: Eisenstein,
}

/// Cells of `table` that differ from [`expected_cell`].
pub fn table_mismatches(field: &Field, table: &SuperTable) -> Vec<CellMismatch> {
    let mut out = Vec::new();
    for row in &table.rows {
        for (col, &got) in table.columns.iter().zip(&row.values) {
            let want = expected_cell(field, &row.verge, col);
            if got != want {
                out.push(CellMismatch {
                    row: row.label.clone(),
                    column: col.format(field),
                    computed: got,
                    expected: want,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonOrthogonalPair {
    pub first: String,
    pub second: String,
    pub scaled_inner_product: Eisenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowNorm {
    pub row: String,
    pub scaled_inner_product: Eisenstein,
}

/// Outcome of the axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperTheoryReport {
    pub q: u64,
    pub characters: usize,
    pub superclasses: usize,
    /// Equal counts, both `3(q-1)+1`.
    pub counts_match: bool,
    pub constant_on_superclasses: bool,
    pub constancy_violation: Option<ConstancyViolation>,
    pub pairwise_orthogonal: bool,
    pub non_orthogonal: Vec<NonOrthogonalPair>,
    pub identity_is_superclass: bool,
    pub norms: Vec<RowNorm>,
    pub table_matches_closed_form: bool,
    pub table_mismatches: Vec<CellMismatch>,
}

impl SuperTheoryReport {
    pub fn passed(&self) -> bool {
        self.counts_match
            && self.constant_on_superclasses
            && self.pairwise_orthogonal
            && self.identity_is_superclass
            && self.table_matches_closed_form
    }
}

/// Checks the four supercharacter-theory axioms by exact summation over
/// `U`, and compares the table with the closed-form cells (q ≤ 27).
pub fn verify_supercharacter_theory(group: &SylowGroup) -> Result<SuperTheoryReport> {
    let f = group.field();
    let q = group.q();
    let values = supercharacter_values(group)?;
    let partition = superclass_partition(group)?;
    let labels: Vec<String> = values.verges.iter().map(|v| row_label(f, v)).collect();

    let characters = values.verges.len();
    let superclasses = partition.parts.len();
    let expected_count = crate::classes::superclass_count(q) as usize;

    let constancy_violation = first_nonconstant(group, &values, &partition);

    let pairs: Vec<(usize, usize)> = (0..characters)
        .flat_map(|i| (i..characters).map(move |j| (i, j)))
        .collect();
    let products = crate::par::map(&pairs, |&(i, j)| {
        inner_product(&values.values[i], &values.values[j])
    });
    let mut non_orthogonal = Vec::new();
    let mut norms = Vec::new();
    for (&(i, j), &p) in pairs.iter().zip(&products) {
        if i == j {
            norms.push(RowNorm {
                row: labels[i].clone(),
                scaled_inner_product: p,
            });
        } else if !p.is_zero() {
            non_orthogonal.push(NonOrthogonalPair {
                first: labels[i].clone(),
                second: labels[j].clone(),
                scaled_inner_product: p,
            });
        }
    }

    let identity_is_superclass = partition
        .parts
        .iter()
        .any(|p| p.members == [group.identity()]);

    let columns = SuperclassLabel::all(f);
    let reps: Vec<usize> = columns
        .iter()
        .map(|c| group.index(&c.representative(group)))
        .collect();
    let table = SuperTable {
        q,
        column_labels: columns.iter().map(|c| c.format(f)).collect(),
        column_sizes: columns.iter().map(|c| column_size(q, c)).collect(),
        rows: values
            .verges
            .iter()
            .zip(&values.values)
            .map(|(v, vals)| SuperRow {
                verge: *v,
                label: row_label(f, v),
                family: Family::of(v),
                values: reps.iter().map(|&i| vals[i]).collect(),
            })
            .collect(),
        columns,
    };
    let mismatches = table_mismatches(f, &table);

    Ok(SuperTheoryReport {
        q,
        characters,
        superclasses,
        counts_match: characters == superclasses && characters == expected_count,
        constant_on_superclasses: constancy_violation.is_none(),
        constancy_violation,
        pairwise_orthogonal: non_orthogonal.is_empty(),
        non_orthogonal,
        identity_is_superclass,
        norms,
        table_matches_closed_form: mismatches.is_empty(),
        table_mismatches: mismatches,
    })
}

/// A seeded spot check of table cells at fields too large to tabulate:
/// `samples` random (supercharacter, superclass) cells, each evaluated at a
/// random member of the superclass and compared with [`expected_cell`].
pub fn sampled_cell_check(group: &SylowGroup, samples: usize, seed: u64) -> Vec<CellMismatch> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let f = group.field();
    let q = group.q() as usize;
    let verges = verge_patterns(f);
    let columns = SuperclassLabel::all(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_elem = |rng: &mut ChaCha8Rng| f.from_index(rng.gen_range(0..q)).expect("index below q");
    let cells: Vec<(Pattern, SuperclassLabel, GroupElem)> = (0..samples)
        .map(|_| {
            let v = *verges.choose(&mut rng).expect("verges are nonempty");
            let col = *columns.choose(&mut rng).expect("columns are nonempty");
            let z = crate::field::FieldElem::ZERO;
            let u = match col {
                SuperclassLabel::C0 => group.identity(),
                SuperclassLabel::C1(t) => {
                    let t3 = random_elem(&mut rng);
                    GroupElem::new(t, t3, random_elem(&mut rng))
                }
                SuperclassLabel::C3(t) => GroupElem::new(z, t, random_elem(&mut rng)),
                SuperclassLabel::C4(t) => group.c(t),
            };
            (v, col, u)
        })
        .collect();
    let checked = crate::par::map(&cells, |(v, col, u)| {
        let got = orbit_character(group, &orbit_of(group, v), u);
        let want = expected_cell(f, v, col);
        (got != want).then(|| CellMismatch {
            row: row_label(f, v),
            column: col.format(f),
            computed: got,
            expected: want,
        })
    });
    checked.into_iter().flatten().collect()
}
