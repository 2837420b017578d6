//! The 8×8 realization of G2: root matrices, root elements `y_i(t)`, the
//! canonical coordinates of the Sylow subgroup G2^syl(q), the twisted
//! endomorphism `F` on those coordinates, and the matrices of the Ree
//! Sylow subgroup built as products of root elements.
//!
//! Everything here is oracle machinery: the closed-form group laws in
//! [`crate::group`] are checked against these matrices.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExpForm, Field, FieldElem};

/// An 8×8 matrix over GF(q). Indices of [`Mat8::entry`] are 1-based, like
/// the matrix units `e_{ij}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat8 {
    rows: [[FieldElem; 8]; 8],
}

impl fmt::Debug for Mat8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{:?}", row.iter().map(|x| x.index()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl Mat8 {
    pub fn zero() -> Self {
        Mat8 {
            rows: [[FieldElem::ZERO; 8]; 8],
        }
    }

    pub fn identity() -> Self {
        let mut m = Mat8::zero();
        for i in 0..8 {
            m.rows[i][i] = FieldElem::ONE;
        }
        m
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> FieldElem {
        self.rows[i - 1][j - 1]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.rows[i - 1][j - 1] = v;
    }

    pub fn mul(&self, other: &Mat8, field: &Field) -> Mat8 {
        let mut out = Mat8::zero();
        for i in 0..8 {
            for k in 0..8 {
                let a = self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..8 {
                    let b = other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = field.add(out.rows[i][j], field.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat8, field: &Field) -> Mat8 {
        let mut out = *self;
        for i in 0..8 {
            for j in 0..8 {
                out.rows[i][j] = field.add(self.rows[i][j], other.rows[i][j]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat8 {
        let mut out = Mat8::zero();
        for i in 0..8 {
            for j in 0..8 {
                out.rows[j][i] = self.rows[i][j];
            }
        }
        out
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..8).all(|i| {
            (0..8).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => self.rows[i][j] == FieldElem::ONE,
                std::cmp::Ordering::Greater => self.rows[i][j].is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn unitriangular_inverse(&self, field: &Field) -> Result<Mat8> {
        if !self.is_upper_unitriangular() {
            return Err(Error::Invariant(
                "inverse requested for a non-unitriangular matrix".into(),
            ));
        }
        let mut inv = Mat8::identity();
        // inv[i][j] = -Σ_{i<k<=j} m[i][k] inv[k][j]
        for j in 0..8 {
            for i in (0..j).rev() {
                let mut s = FieldElem::ZERO;
                for k in i + 1..=j {
                    s = field.add(s, field.mul(self.rows[i][k], inv.rows[k][j]));
                }
                inv.rows[i][j] = field.neg(s);
            }
        }
        Ok(inv)
    }

    /// `x⁻¹ y⁻¹ x y` for unitriangular `x`, `y`.
    pub fn commutator(x: &Mat8, y: &Mat8, field: &Field) -> Result<Mat8> {
        let xi = x.unitriangular_inverse(field)?;
        let yi = y.unitriangular_inverse(field)?;
        Ok(xi.mul(&yi, field).mul(x, field).mul(y, field))
    }

    /// Rows as comma-separated field elements, one row per line, entries
    /// separated by spaces.
    pub fn render(&self, field: &Field) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| field.format(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Integer matrix `(sign, i, j)` triples, 1-based.
type Pattern = &'static [(i8, usize, usize)];

const E_ALPHA: Pattern = &[(1, 1, 2), (-1, 7, 8), (1, 3, 4), (-1, 5, 6), (1, 3, 5), (-1, 4, 6)];
const E_BETA: Pattern = &[(1, 2, 3), (-1, 6, 7)];
const E_ALPHA_BETA: Pattern = &[(-1, 1, 3), (1, 6, 8), (1, 2, 4), (-1, 5, 7), (1, 2, 5), (-1, 4, 7)];
const E_2ALPHA_BETA: Pattern = &[(-1, 1, 4), (1, 5, 8), (-1, 2, 6), (1, 3, 7), (-1, 1, 5), (1, 4, 8)];
const E_3ALPHA_BETA: Pattern = &[(-1, 1, 6), (1, 3, 8)];
const E_3ALPHA_2BETA: Pattern = &[(-1, 1, 7), (1, 2, 8)];

type IntMat = [[i64; 8]; 8];

/// The six positive-root matrices `e_α, e_β, e_{α+β}, e_{2α+β}, e_{3α+β},
/// e_{3α+2β}` over the integers, with their squares.
#[derive(Debug, Clone)]
pub struct RootMatrixTable {
    pub roots: [IntMat; 6],
    pub squares: [IntMat; 6],
}

fn int_matrix(p: Pattern) -> IntMat {
    let mut m = [[0i64; 8]; 8];
    for &(s, i, j) in p {
        m[i - 1][j - 1] += s as i64;
    }
    m
}

pub fn int_matmul(a: &IntMat, b: &IntMat) -> IntMat {
    let mut out = [[0i64; 8]; 8];
    for i in 0..8 {
        for k in 0..8 {
            if a[i][k] != 0 {
                for j in 0..8 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

impl RootMatrixTable {
    fn build() -> Self {
        let roots = [
            E_ALPHA,
            E_BETA,
            E_ALPHA_BETA,
            E_2ALPHA_BETA,
            E_3ALPHA_BETA,
            E_3ALPHA_2BETA,
        ]
        .map(int_matrix);
        let squares = roots.map(|r| int_matmul(&r, &r));
        RootMatrixTable { roots, squares }
    }

    pub fn get() -> &'static RootMatrixTable {
        static TABLE: OnceLock<RootMatrixTable> = OnceLock::new();
        TABLE.get_or_init(RootMatrixTable::build)
    }

    /// Root `i` in the numbering `y_1 = y_α, ..., y_6 = y_{3α+2β}`.
    pub fn root(&self, i: usize) -> &IntMat {
        &self.roots[i - 1]
    }
}

/// `y_i(t) = I + t e_i + (1/2) t² e_i²`, with 1/2 = 2 in characteristic 3.
pub fn root_element(field: &Field, i: usize, t: FieldElem) -> Mat8 {
    assert!((1..=6).contains(&i), "root index {i} outside 1..=6");
    let table = RootMatrixTable::get();
    let e = &table.roots[i - 1];
    let e2 = &table.squares[i - 1];
    let t2 = field.mul(field.mul(t, t), field.from_int(2));
    let mut m = Mat8::identity();
    for r in 0..8 {
        for c in 0..8 {
            let lin = field.mul(t, field.from_int(e[r][c]));
            let quad = field.mul(t2, field.from_int(e2[r][c]));
            m.rows[r][c] = field.add(m.rows[r][c], field.add(lin, quad));
        }
    }
    m
}

/// Canonical coordinates `(t1, ..., t6)` of
/// `y(t1,...,t6) = y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G2Tuple(pub [FieldElem; 6]);

impl G2Tuple {
    pub fn zero() -> Self {
        G2Tuple([FieldElem::ZERO; 6])
    }

    /// Coordinate `t_i`, 1-based.
    pub fn t(&self, i: usize) -> FieldElem {
        self.0[i - 1]
    }
}

/// Order of the root factors in the canonical form.
const CANONICAL_ORDER: [usize; 6] = [2, 1, 3, 4, 5, 6];

pub fn g2_tuple_to_matrix(field: &Field, y: &G2Tuple) -> Mat8 {
    CANONICAL_ORDER.iter().fold(Mat8::identity(), |acc, &i| {
        acc.mul(&root_element(field, i, y.t(i)), field)
    })
}

/// Recovers the canonical coordinates by reading one entry per root and
/// peeling the factor off from the left.
pub fn matrix_to_g2_tuple(field: &Field, m: &Mat8) -> Result<G2Tuple> {
    if !m.is_upper_unitriangular() {
        return Err(Error::NotInG2("not upper unitriangular".into()));
    }
    let t1 = m.entry(1, 2);
    let t2 = m.entry(2, 3);
    let mut rest = root_element(field, 1, field.neg(t1))
        .mul(&root_element(field, 2, field.neg(t2)), field)
        .mul(m, field);
    let mut t = [t1, t2, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO];
    // (root, entry carrying -t for that root)
    for (root, (i, j)) in [(3, (1, 3)), (4, (1, 4)), (5, (1, 6)), (6, (1, 7))] {
        let ti = field.neg(rest.entry(i, j));
        t[root - 1] = ti;
        rest = root_element(field, root, field.neg(ti)).mul(&rest, field);
    }
    if rest != Mat8::identity() {
        return Err(Error::NotInG2(format!(
            "non-identity residue after peeling:\n{rest:?}"
        )));
    }
    Ok(G2Tuple(t))
}

/// The twisted endomorphism `F` (graph automorphism composed with the
/// field automorphism `t ↦ t^θ`) on canonical coordinates.
pub fn twisted_f(field: &Field, y: &G2Tuple) -> G2Tuple {
    let th = |x: FieldElem| field.frob_pow(x, field.m());
    let th3 = |x: FieldElem| field.pow_3theta(x);
    let [t1, t2, t3, t4, t5, t6] = y.0;
    let a = th3(t1);
    let b = th(t2);
    let b2 = field.mul(b, b);
    let b3 = th3(t2);
    G2Tuple([
        b,
        a,
        field.sub(th(t5), field.mul(a, b)),
        field.sub(th(t6), field.mul(a, b2)),
        field.add(th3(t3), field.mul(a, b3)),
        field.add(th3(t4), field.mul(field.mul(a, a), b3)),
    ])
}

/// The F-fixed coordinates determined by `(t1, t3, t4)`.
pub fn ree_tuple(field: &Field, t1: FieldElem, t3: FieldElem, t4: FieldElem) -> G2Tuple {
    G2Tuple([
        t1,
        field.pow_3theta(t1),
        t3,
        t4,
        field.add(field.pow_3theta(t3), field.power_expr(t1, ExpForm::new(3, 3))),
        field.add(field.pow_3theta(t4), field.power_expr(t1, ExpForm::new(6, 3))),
    ])
}

/// `Y(t1,t3,t4)` as the product of root elements.
pub fn ree_matrix(field: &Field, t1: FieldElem, t3: FieldElem, t4: FieldElem) -> Mat8 {
    g2_tuple_to_matrix(field, &ree_tuple(field, t1, t3, t4))
}

/// Hand transcription of the published closed-form matrix of `Y(t1,t3,t4)`,
/// kept verbatim (coefficients such as 2 and -2 are reduced only by the
/// field arithmetic). Used as a fixture, never as ground truth.
pub fn displayed_ree_matrix(field: &Field, t1: FieldElem, t3: FieldElem, t4: FieldElem) -> Mat8 {
    let f = field;
    let c = |k: i64| f.from_int(k);
    let p1 = |cf: u32, k: u32| f.power_expr(t1, ExpForm::new(cf, k));
    let sum = |xs: &[FieldElem]| xs.iter().fold(FieldElem::ZERO, |a, &x| f.add(a, x));
    let prod = |xs: &[FieldElem]| xs.iter().fold(FieldElem::ONE, |a, &x| f.mul(a, x));
    let n = |x: FieldElem| f.neg(x);
    let t3_3th = f.pow_3theta(t3);
    let t4_3th = f.pow_3theta(t4);

    let mut m = Mat8::identity();
    let e14 = f.sub(f.mul(t1, t3), t4);
    m.set(1, 2, t1);
    m.set(1, 3, n(t3));
    m.set(1, 4, e14);
    m.set(1, 5, e14);
    m.set(1, 6, sum(&[n(f.mul(t1, t4)), n(p1(3, 3)), n(t3_3th)]));
    m.set(
        1,
        7,
        sum(&[n(prod(&[t1, t3, t3])), n(f.mul(t3, t4)), n(p1(6, 3)), n(t4_3th)]),
    );
    m.set(
        1,
        8,
        sum(&[
            prod(&[c(2), t1, t3, t4]),
            p1(6, 4),
            f.mul(t1, t4_3th),
            n(f.mul(t3, p1(3, 3))),
            n(f.mul(t3_3th, t3)),
            n(f.mul(t4, t4)),
        ]),
    );
    let e24 = f.add(p1(3, 1), t3);
    m.set(2, 3, p1(3, 0));
    m.set(2, 4, e24);
    m.set(2, 5, e24);
    m.set(2, 6, sum(&[n(p1(3, 2)), n(t4)]));
    m.set(
        2,
        7,
        sum(&[prod(&[c(-2), p1(3, 1), t3]), f.mul(p1(3, 0), t4), n(f.mul(t3, t3))]),
    );
    m.set(
        2,
        8,
        sum(&[
            n(f.mul(p1(3, 2), t3)),
            prod(&[c(2), p1(3, 1), t4]),
            f.mul(p1(3, 0), t3_3th),
            prod(&[c(2), t3, t4]),
            t4_3th,
            f.mul(c(2), p1(6, 3)),
        ]),
    );
    m.set(3, 4, t1);
    m.set(3, 5, t1);
    m.set(3, 6, n(f.mul(t1, t1)));
    m.set(3, 7, f.add(prod(&[c(-2), t1, t3]), t4));
    m.set(
        3,
        8,
        sum(&[n(prod(&[t1, t1, t3])), prod(&[c(2), t1, t4]), t3_3th, p1(3, 3)]),
    );
    let e48 = f.add(n(f.mul(t1, t3)), t4);
    m.set(4, 5, FieldElem::ZERO);
    m.set(4, 6, n(t1));
    m.set(4, 7, n(t3));
    m.set(4, 8, e48);
    m.set(5, 6, n(t1));
    m.set(5, 7, n(t3));
    m.set(5, 8, e48);
    m.set(6, 7, n(p1(3, 0)));
    m.set(6, 8, f.add(p1(3, 1), t3));
    m.set(7, 8, n(t1));
    m
}

/// One entry where the transcribed display disagrees with the root-element
/// product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub t1: String,
    pub t3: String,
    pub t4: String,
    pub row: usize,
    pub col: usize,
    pub computed: String,
    pub displayed: String,
}

/// Compares the displayed matrix against the product of root elements;
/// returns every mismatching entry.
pub fn display_mismatches(
    field: &Field,
    t1: FieldElem,
    t3: FieldElem,
    t4: FieldElem,
) -> Vec<EntryMismatch> {
    let truth = ree_matrix(field, t1, t3, t4);
    let shown = displayed_ree_matrix(field, t1, t3, t4);
    let mut out = Vec::new();
    for i in 1..=8 {
        for j in 1..=8 {
            if truth.entry(i, j) != shown.entry(i, j) {
                out.push(EntryMismatch {
                    t1: field.format(t1),
                    t3: field.format(t3),
                    t4: field.format(t4),
                    row: i,
                    col: j,
                    computed: field.format(truth.entry(i, j)),
                    displayed: field.format(shown.entry(i, j)),
                });
            }
        }
    }
    out
}

/// The five commutator relations between root subgroups that are
/// nontrivial over the integers, reduced to characteristic 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommutatorRelation {
    /// `[y1(t), y2(s)] = y3(-st) y4(-st²) y5(st³) y6(s²t³)`
    Y1Y2,
    /// `[y1(t), y3(s)] = y4(ts)`
    Y1Y3,
    /// `[y1(t), y4(s)] = 1`
    Y1Y4,
    /// `[y3(t), y4(s)] = 1`
    Y3Y4,
    /// `[y2(t), y5(s)] = y6(ts)`
    Y2Y5,
}

impl CommutatorRelation {
    pub const ALL: [CommutatorRelation; 5] = [
        CommutatorRelation::Y1Y2,
        CommutatorRelation::Y1Y3,
        CommutatorRelation::Y1Y4,
        CommutatorRelation::Y3Y4,
        CommutatorRelation::Y2Y5,
    ];

    fn roots(self) -> (usize, usize) {
        match self {
            CommutatorRelation::Y1Y2 => (1, 2),
            CommutatorRelation::Y1Y3 => (1, 3),
            CommutatorRelation::Y1Y4 => (1, 4),
            CommutatorRelation::Y3Y4 => (3, 4),
            CommutatorRelation::Y2Y5 => (2, 5),
        }
    }

    /// Left side by matrix commutator, right side from the relation.
    pub fn sides(self, field: &Field, t: FieldElem, s: FieldElem) -> Result<(Mat8, Mat8)> {
        let (i, j) = self.roots();
        let lhs = Mat8::commutator(&root_element(field, i, t), &root_element(field, j, s), field)?;
        let f = field;
        let y = |k, x| root_element(field, k, x);
        let rhs = match self {
            CommutatorRelation::Y1Y2 => {
                let st = f.mul(s, t);
                let t2 = f.mul(t, t);
                let t3 = f.mul(t2, t);
                y(3, f.neg(st))
                    .mul(&y(4, f.neg(f.mul(s, t2))), f)
                    .mul(&y(5, f.mul(s, t3)), f)
                    .mul(&y(6, f.mul(f.mul(s, s), t3)), f)
            }
            CommutatorRelation::Y1Y3 => y(4, f.mul(t, s)),
            CommutatorRelation::Y1Y4 | CommutatorRelation::Y3Y4 => Mat8::identity(),
            CommutatorRelation::Y2Y5 => y(6, f.mul(t, s)),
        };
        Ok((lhs, rhs))
    }

    pub fn holds(self, field: &Field, t: FieldElem, s: FieldElem) -> Result<bool> {
        let (l, r) = self.sides(field, t, s)?;
        Ok(l == r)
    }
}
