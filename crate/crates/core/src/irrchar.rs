//! The irreducible characters of `U` at q = 3: nine linear characters lifted
//! from `U/Y_c ≅ C3 × C3`, and two characters of degree 3 induced from the
//! linear characters `λ(b(t3) c(t4)) = ϑ(-A14 t4)` of `H = Y_b Y_c`.

use serde::Serialize;

use crate::classes::{all_classes_bruteforce, ClassRecord};
use crate::cyclo::{omega_pow, theta_char, Eisenstein};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::group::{GroupElem, SylowGroup};
use crate::orbits::Family;
use crate::superchar::{row_label, supercharacter_values};

/// A class function stored as its values on every element, indexed by
/// [`SylowGroup::index`].
pub type ClassFunction = Vec<Eisenstein>;

fn require_prime(group: &SylowGroup) -> Result<()> {
    if group.q() != 3 {
        return Err(Error::RequiresPrimeField { q: group.q() });
    }
    Ok(())
}

/// Exponents `(i, j)` with `u Y_c = ā^i b̄^j`, where `ā = a(1) Y_c` and
/// `b̄ = b(1) Y_c`, for every element of `U`.
#[derive(Clone, Debug)]
pub struct Quotient {
    coords: Vec<(u8, u8)>,
}

impl Quotient {
    /// Builds `U/Y_c`, checking that it has order 9 and exponent 3 and is
    /// abelian, and that `ā`, `b̄` generate it.
    pub fn new(group: &SylowGroup) -> Result<Self> {
        require_prime(group)?;
        let f = group.field();
        let in_center = |x: &GroupElem| x.t1.is_zero() && x.t3.is_zero();
        let elements = group.elements()?;
        for x in &elements {
            if !in_center(&group.pow(x, 3)) {
                return Err(Error::Invariant(format!(
                    "{} has order 9 modulo the center",
                    group.format(x)
                )));
            }
            for y in &elements {
                if !in_center(&group.commutator(x, y)) {
                    return Err(Error::Invariant("U/Y_c is not abelian".into()));
                }
            }
        }
        let a = group.a(f.one());
        let b = group.b(f.one());
        let mut by_coset = std::collections::HashMap::new();
        for i in 0..3u8 {
            for j in 0..3u8 {
                let w = group.mul(&group.pow(&a, i as u64), &group.pow(&b, j as u64));
                if by_coset.insert((w.t1, w.t3), (i, j)).is_some() {
                    return Err(Error::Invariant("a(1), b(1) do not generate U/Y_c".into()));
                }
            }
        }
        let coords = elements.iter().map(|x| by_coset[&(x.t1, x.t3)]).collect();
        Ok(Quotient { coords })
    }

    pub fn coords(&self, group: &SylowGroup, x: &GroupElem) -> (u8, u8) {
        self.coords[group.index(x)]
    }
}

/// The linear character sending `ā ↦ ω^α`, `b̄ ↦ ω^β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCharacter {
    pub alpha: u8,
    pub beta: u8,
    #[serde(skip)]
    pub values: ClassFunction,
}

/// The nine lifts of the characters of `U/Y_c`, ordered by `(α, β)`, each
/// checked to be a homomorphism on all pairs.
pub fn linear_characters(group: &SylowGroup) -> Result<Vec<LinearCharacter>> {
    let quotient = Quotient::new(group)?;
    let elements = group.elements()?;
    let mut out = Vec::new();
    for alpha in 0..3u8 {
        for beta in 0..3u8 {
            let values: ClassFunction = elements
                .iter()
                .map(|x| {
                    let (i, j) = quotient.coords(group, x);
                    omega_pow((alpha * i + beta * j) as i64)
                })
                .collect();
            for x in &elements {
                for y in &elements {
                    let xy = group.mul(x, y);
                    if values[group.index(&xy)] != values[group.index(x)] * values[group.index(y)] {
                        return Err(Error::Invariant(format!(
                            "linear character ({alpha},{beta}) is not multiplicative"
                        )));
                    }
                }
            }
            out.push(LinearCharacter { alpha, beta, values });
        }
    }
    Ok(out)
}

/// `Ind_H^U λ` with `λ(b(t3) c(t4)) = ϑ(-A14 t4)`, by the induction sum over
/// `U` divided by `|H|`.
pub fn induced_character(group: &SylowGroup, a14: FieldElem) -> Result<ClassFunction> {
    require_prime(group)?;
    let f = group.field();
    let lambda = |h: &GroupElem| -> Option<Eisenstein> {
        h.t1.is_zero().then(|| theta_char(f, f.neg(f.mul(a14, h.t4))))
    };
    let elements = group.elements()?;
    let h_order = (group.q() * group.q()) as i128;
    elements
        .iter()
        .map(|u| {
            let sum: Eisenstein = elements
                .iter()
                .filter_map(|x| lambda(&group.conjugate(u, &group.inv(x))))
                .sum();
            sum.exact_div(h_order)
        })
        .collect()
}

/// The two induced characters, for `A14 = 1, 2`.
pub fn induced_characters(group: &SylowGroup) -> Result<Vec<(FieldElem, ClassFunction)>> {
    require_prime(group)?;
    group
        .field()
        .nonzero()
        .map(|a| Ok((a, induced_character(group, a)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharRow {
    pub label: String,
    pub degree: i128,
    /// One value per class, in column order.
    pub values: Vec<Eisenstein>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub column_labels: Vec<String>,
    pub column_sizes: Vec<usize>,
    #[serde(skip)]
    pub classes: Vec<ClassRecord>,
    pub rows: Vec<CharRow>,
    #[serde(skip)]
    pub functions: Vec<ClassFunction>,
}

/// `Σ_u χ(u) conj(ψ(u)) / |U|`, exact.
pub fn normalized_inner_product(order: u64, a: &[Eisenstein], b: &[Eisenstein]) -> Result<Eisenstein> {
    crate::superchar::inner_product(a, b).exact_div(order as i128)
}

/// Character table of `U` at q = 3, with class constancy, both
/// orthogonality relations and completeness checked exactly.
pub fn build_char_table(group: &SylowGroup) -> Result<CharTable> {
    require_prime(group)?;
    let f = group.field();
    let order = group.order();
    let classes = all_classes_bruteforce(group)?;

    let mut labels = Vec::new();
    let mut functions = Vec::new();
    for lin in linear_characters(group)? {
        labels.push(format!("lin({},{})", lin.alpha, lin.beta));
        functions.push(lin.values);
    }
    for (a, values) in induced_characters(group)? {
        labels.push(format!("ind({})", f.format(a)));
        functions.push(values);
    }

    let mut rows = Vec::new();
    for (label, values) in labels.iter().zip(&functions) {
        for c in &classes {
            let v0 = values[group.index(&c.representative)];
            if c.members.iter().any(|x| values[group.index(x)] != v0) {
                return Err(Error::Invariant(format!(
                    "{label} is not constant on the class of {}",
                    group.format(&c.representative)
                )));
            }
        }
        let degree = values[group.index(&group.identity())];
        if degree.b != 0 {
            return Err(Error::Invariant(format!("{label} has degree {degree}")));
        }
        rows.push(CharRow {
            label: label.clone(),
            degree: degree.a,
            values: classes
                .iter()
                .map(|c| values[group.index(&c.representative)])
                .collect(),
        });
    }

    for i in 0..functions.len() {
        for j in 0..functions.len() {
            let p = normalized_inner_product(order, &functions[i], &functions[j])?;
            let want = if i == j { Eisenstein::ONE } else { Eisenstein::ZERO };
            if p != want {
                return Err(Error::Invariant(format!(
                    "<{}, {}> = {p}",
                    labels[i], labels[j]
                )));
            }
        }
    }

    for (k, ck) in classes.iter().enumerate() {
        for (l, _) in classes.iter().enumerate() {
            let s: Eisenstein = rows.iter().map(|r| r.values[k] * r.values[l].conj()).sum();
            let want = if k == l {
                Eisenstein::int((order as usize / ck.size) as i128)
            } else {
                Eisenstein::ZERO
            };
            if s != want {
                return Err(Error::Invariant(format!(
                    "column relation fails at classes {k}, {l}: {s}"
                )));
            }
        }
    }

    let sum_sq: i128 = rows.iter().map(|r| r.degree * r.degree).sum();
    if rows.len() != classes.len() || sum_sq != order as i128 {
        return Err(Error::Invariant(format!(
            "{} characters, {} classes, sum of squared degrees {sum_sq}",
            rows.len(),
            classes.len()
        )));
    }

    Ok(CharTable {
        column_labels: classes.iter().map(|c| group.format(&c.representative)).collect(),
        column_sizes: classes.iter().map(|c| c.size).collect(),
        classes,
        rows,
        functions,
    })
}

/// Rows of the published q = 3 table, as closed-form cell formulas on
/// `Y(t1, t3, t4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PublishedRow {
    /// `ϑ(A12 t1) ϑ(-A13 t3)` on classes outside `Y_c`, 1 on `Y_c`.
    Linear { a12: FieldElem, a13: FieldElem },
    /// 3 at the identity, `3 ϑ(-A14 t4)` on `Y_c`, 0 elsewhere.
    Induced { a14: FieldElem },
}

impl PublishedRow {
    pub fn all(field: &Field) -> Vec<PublishedRow> {
        let mut out = vec![PublishedRow::Linear {
            a12: field.zero(),
            a13: field.zero(),
        }];
        out.extend(field.nonzero().map(|a12| PublishedRow::Linear {
            a12,
            a13: field.zero(),
        }));
        for a13 in field.nonzero() {
            out.extend(field.iter().map(|a12| PublishedRow::Linear { a12, a13 }));
        }
        out.extend(field.nonzero().map(|a14| PublishedRow::Induced { a14 }));
        out
    }

    pub fn label(&self, field: &Field) -> String {
        match self {
            PublishedRow::Linear { a12, a13 } => {
                format!("lin^{{{},{}}}", field.format(*a12), field.format(*a13))
            }
            PublishedRow::Induced { a14 } => format!("ind^{{{}}}", field.format(*a14)),
        }
    }

    /// The cell formula at `x`.
    pub fn value(&self, field: &Field, x: &GroupElem) -> Eisenstein {
        let central = x.t1.is_zero() && x.t3.is_zero();
        match *self {
            PublishedRow::Linear { a12, a13 } => {
                if central {
                    Eisenstein::ONE
                } else {
                    theta_char(field, field.mul(a12, x.t1))
                        * theta_char(field, field.neg(field.mul(a13, x.t3)))
                }
            }
            PublishedRow::Induced { a14 } => {
                if !central {
                    Eisenstein::ZERO
                } else {
                    theta_char(field, field.neg(field.mul(a14, x.t4))).scale(3)
                }
            }
        }
    }

    fn degree(&self) -> i128 {
        match self {
            PublishedRow::Linear { .. } => 1,
            PublishedRow::Induced { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharCellDiff {
    pub published_row: String,
    pub matched_row: String,
    pub class: String,
    pub published: Eisenstein,
    pub computed: Eisenstein,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedRowStatus {
    pub published_row: String,
    pub matched_row: String,
    pub mismatched_cells: usize,
    /// Whether the published formula is itself a homomorphism on `U`
    /// (only meaningful for degree-1 rows).
    pub multiplicative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedTableDiff {
    pub rows: Vec<PublishedRowStatus>,
    pub cells: Vec<CharCellDiff>,
}

fn assignment_cost(cost: &[Vec<usize>], rows: &[usize], cols: &[usize]) -> (usize, Vec<usize>) {
    // exhaustive search over bijections rows -> cols; lexicographically
    // first optimum wins
    fn go(
        cost: &[Vec<usize>],
        rows: &[usize],
        cols: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        acc: usize,
        best: &mut (usize, Vec<usize>),
    ) {
        let k = cur.len();
        if acc >= best.0 {
            return;
        }
        if k == rows.len() {
            *best = (acc, cur.clone());
            return;
        }
        for (ci, &c) in cols.iter().enumerate() {
            if !used[ci] {
                used[ci] = true;
                cur.push(c);
                go(cost, rows, cols, used, cur, acc + cost[rows[k]][c], best);
                cur.pop();
                used[ci] = false;
            }
        }
    }
    let mut best = (usize::MAX, Vec::new());
    go(cost, rows, cols, &mut vec![false; cols.len()], &mut Vec::new(), 0, &mut best);
    best
}

/// Compares the published cell formulas with the computed table. Published
/// rows are matched to computed rows of the same degree by a bijection
/// minimizing the number of differing cells.
pub fn diff_against_published(group: &SylowGroup, table: &CharTable) -> Result<PublishedTableDiff> {
    require_prime(group)?;
    let f = group.field();
    let published = PublishedRow::all(f);
    let reps: Vec<GroupElem> = table.classes.iter().map(|c| c.representative).collect();
    let pub_values: Vec<Vec<Eisenstein>> = published
        .iter()
        .map(|p| reps.iter().map(|x| p.value(f, x)).collect())
        .collect();
    let cost: Vec<Vec<usize>> = pub_values
        .iter()
        .map(|pv| {
            table
                .rows
                .iter()
                .map(|r| pv.iter().zip(&r.values).filter(|(a, b)| a != b).count())
                .collect()
        })
        .collect();

    let mut matched = vec![0usize; published.len()];
    for degree in [1i128, 3] {
        let prow: Vec<usize> = (0..published.len())
            .filter(|&i| published[i].degree() == degree)
            .collect();
        let crow: Vec<usize> = (0..table.rows.len())
            .filter(|&i| table.rows[i].degree == degree)
            .collect();
        if prow.len() != crow.len() {
            return Err(Error::Invariant(format!(
                "{} published and {} computed rows of degree {degree}",
                prow.len(),
                crow.len()
            )));
        }
        let (_, assignment) = assignment_cost(&cost, &prow, &crow);
        for (p, c) in prow.iter().zip(assignment) {
            matched[*p] = c;
        }
    }

    let elements = group.elements()?;
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for (i, p) in published.iter().enumerate() {
        let c = &table.rows[matched[i]];
        let multiplicative = p.degree() == 1
            && elements.iter().all(|x| {
                elements.iter().all(|y| {
                    p.value(f, &group.mul(x, y)) == p.value(f, x) * p.value(f, y)
                })
            });
        let mut n = 0;
        for (k, x) in reps.iter().enumerate() {
            if pub_values[i][k] != c.values[k] {
                n += 1;
                cells.push(CharCellDiff {
                    published_row: p.label(f),
                    matched_row: c.label.clone(),
                    class: group.format(x),
                    published: pub_values[i][k],
                    computed: c.values[k],
                });
            }
        }
        rows.push(PublishedRowStatus {
            published_row: p.label(f),
            matched_row: c.label.clone(),
            mismatched_cells: n,
            multiplicative,
        });
    }
    Ok(PublishedTableDiff { rows, cells })
}

/// Decomposition of one supercharacter into irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub supercharacter: String,
    /// `(irreducible label, multiplicity)` for nonzero multiplicities.
    pub constituents: Vec<(String, i128)>,
    /// Multiplicities are non-negative integers and reproduce the
    /// supercharacter pointwise.
    pub consistent: bool,
    /// The decomposition has the expected shape for its family.
    pub expected_shape: bool,
    /// For the `e13` family: the published labels `lin^{A12,A13}`, with
    /// `A12` ranging over the field, that the constituents match.
    pub published_labels: Vec<String>,
    /// Whether those published rows were matched to exactly the computed
    /// constituents.
    pub published_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub decompositions: Vec<Decomposition>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.decompositions.iter().all(|d| d.consistent && d.expected_shape)
    }
}

/// Decomposes every supercharacter into the computed irreducibles by exact
/// inner products and checks the expected shapes: the trivial and `e12`
/// supercharacters are linear, each `e13` supercharacter is a sum of three
/// linear characters, each `e14` supercharacter is three times an induced
/// character.
pub fn verify_supercharacter_relations(group: &SylowGroup, table: &CharTable) -> Result<RelationReport> {
    require_prime(group)?;
    let f = group.field();
    let order = group.order();
    let supers = supercharacter_values(group)?;
    let published = PublishedRow::all(f);
    let diff = diff_against_published(group, table)?;

    let mut decompositions = Vec::new();
    for (verge, values) in supers.verges.iter().zip(&supers.values) {
        let mut constituents = Vec::new();
        let mut consistent = true;
        let mut rebuilt = vec![Eisenstein::ZERO; values.len()];
        for (row, chi) in table.rows.iter().zip(&table.functions) {
            let m = normalized_inner_product(order, values, chi)?;
            if m.b != 0 || m.a < 0 {
                consistent = false;
                continue;
            }
            if m.a > 0 {
                constituents.push((row.label.clone(), m.a));
                for (r, c) in rebuilt.iter_mut().zip(chi) {
                    *r += c.scale(m.a);
                }
            }
        }
        consistent &= rebuilt == *values;

        let degrees: Vec<(i128, i128)> = constituents
            .iter()
            .map(|(l, m)| {
                let d = table.rows.iter().find(|r| &r.label == l).map_or(0, |r| r.degree);
                (d, *m)
            })
            .collect();
        let expected_shape = match Family::of(verge) {
            Family::Zero | Family::F1 => degrees == [(1, 1)],
            Family::F3 => degrees.len() == 3 && degrees.iter().all(|&dm| dm == (1, 1)),
            Family::F4 => degrees == [(3, 3)],
        };

        let (published_labels, published_agrees) = if Family::of(verge) == Family::F3 {
            let mut labels = Vec::new();
            let mut matched = Vec::new();
            for (p, status) in published.iter().zip(&diff.rows) {
                if matches!(p, PublishedRow::Linear { a13, .. } if *a13 == verge.a13) {
                    labels.push(status.published_row.clone());
                    matched.push(status.matched_row.clone());
                }
            }
            let mut got: Vec<String> = constituents.iter().map(|(l, _)| l.clone()).collect();
            got.sort();
            matched.sort();
            (labels, Some(got == matched))
        } else {
            (Vec::new(), None)
        };
        decompositions.push(Decomposition {
            supercharacter: row_label(f, verge),
            constituents,
            consistent,
            expected_shape,
            published_labels,
            published_agrees,
        });
    }
    Ok(RelationReport { decompositions })
}
