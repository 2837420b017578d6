//! Pattern space `V = F_q e12 ⊕ F_q e13 ⊕ F_q e14`, the 1-cocycle
//! `f: U → V`, the trace form, the actions `∘` and `.`, and the orbits of
//! `U` on `V` together with the characters of their orbit modules.
//!
//! Patterns are bare coordinate triples. The matrix-level definitions
//! (`A∘g = π(Ag)`, `A.g = π(A g^{-T})`) take an arbitrary unitriangular
//! [`Mat8`] and serve as the oracle for the closed form
//! [`act_dot_elem`].

use serde::Serialize;

use crate::chevalley::Mat8;
use crate::cyclo::{theta_char, Eisenstein};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, ENUMERATION_CAP};
use crate::group::{GroupElem, SylowGroup};

/// `A = a12 e12 + a13 e13 + a14 e14`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pattern {
    pub a12: FieldElem,
    pub a13: FieldElem,
    pub a14: FieldElem,
}

impl Pattern {
    pub const ZERO: Pattern = Pattern {
        a12: FieldElem::ZERO,
        a13: FieldElem::ZERO,
        a14: FieldElem::ZERO,
    };

    pub fn new(a12: FieldElem, a13: FieldElem, a14: FieldElem) -> Self {
        Pattern { a12, a13, a14 }
    }

    pub fn add(&self, other: &Pattern, field: &Field) -> Pattern {
        Pattern::new(
            field.add(self.a12, other.a12),
            field.add(self.a13, other.a13),
            field.add(self.a14, other.a14),
        )
    }

    pub fn neg(&self, field: &Field) -> Pattern {
        Pattern::new(field.neg(self.a12), field.neg(self.a13), field.neg(self.a14))
    }

    pub fn index(&self, q: usize) -> usize {
        (self.a12.index() * q + self.a13.index()) * q + self.a14.index()
    }

    /// Parses `a12;a13;a14`.
    pub fn parse(field: &Field, s: &str) -> Result<Pattern> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected a12;a13;a14, got {s:?}")));
        }
        Ok(Pattern::new(
            field.parse(parts[0])?,
            field.parse(parts[1])?,
            field.parse(parts[2])?,
        ))
    }

    pub fn format(&self, field: &Field) -> String {
        format!(
            "{};{};{}",
            field.format(self.a12),
            field.format(self.a13),
            field.format(self.a14)
        )
    }
}

/// Every pattern, in index order.
pub fn all_patterns(field: &Field) -> impl Iterator<Item = Pattern> + '_ {
    field.iter().flat_map(move |a| {
        field
            .iter()
            .flat_map(move |b| field.iter().map(move |c| Pattern::new(a, b, c)))
    })
}

/// Orbit families, by the rightmost nonzero coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    Zero,
    F1,
    F3,
    F4,
}

impl Family {
    pub fn of(a: &Pattern) -> Family {
        if !a.a14.is_zero() {
            Family::F4
        } else if !a.a13.is_zero() {
            Family::F3
        } else if !a.a12.is_zero() {
            Family::F1
        } else {
            Family::Zero
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Zero => "zero",
            Family::F1 => "F1",
            Family::F3 => "F3",
            Family::F4 => "F4",
        }
    }
}

/// `f(Y(t1,t3,t4)) = (t1, -t3, t1 t3 - t4)`.
pub fn cocycle_f(group: &SylowGroup, u: &GroupElem) -> Pattern {
    let f = group.field();
    Pattern::new(u.t1, f.neg(u.t3), f.sub(f.mul(u.t1, u.t3), u.t4))
}

/// `π(g)`: the entries of `g` at (1,2), (1,3), (1,4). Defined on every
/// unitriangular matrix.
pub fn cocycle_f_matrix(g: &Mat8) -> Pattern {
    Pattern::new(g.entry(1, 2), g.entry(1, 3), g.entry(1, 4))
}

/// Trace form `κ(A, B) = tr(Aᵀ B)` restricted to `V`.
pub fn kappa(field: &Field, a: &Pattern, b: &Pattern) -> FieldElem {
    let s = field.add(field.mul(a.a12, b.a12), field.mul(a.a13, b.a13));
    field.add(s, field.mul(a.a14, b.a14))
}

/// `A∘g = π(A g)`.
pub fn act_circ(field: &Field, a: &Pattern, g: &Mat8) -> Pattern {
    let row = [a.a12, a.a13, a.a14];
    let col = |j: usize| {
        (2..=4).fold(FieldElem::ZERO, |acc, k| {
            field.add(acc, field.mul(row[k - 2], g.entry(k, j)))
        })
    };
    Pattern::new(col(2), col(3), col(4))
}

/// `A.g = π(A g^{-T})`.
pub fn act_dot(field: &Field, a: &Pattern, g: &Mat8) -> Result<Pattern> {
    let inv = g.unitriangular_inverse(field)?;
    let row = [a.a12, a.a13, a.a14];
    let col = |j: usize| {
        (2..=4).fold(FieldElem::ZERO, |acc, k| {
            field.add(acc, field.mul(row[k - 2], inv.entry(j, k)))
        })
    };
    Ok(Pattern::new(col(2), col(3), col(4)))
}

/// `A.Y(t1,t3,t4) = (A12 - A13 t1^(3θ) - A14 t3, A13 - A14 t1, A14)`.
#[inline]
pub fn act_dot_elem(group: &SylowGroup, a: &Pattern, u: &GroupElem) -> Pattern {
    let f = group.field();
    let a12 = f.sub(f.sub(a.a12, f.mul(a.a13, f.pow_3theta(u.t1))), f.mul(a.a14, u.t3));
    Pattern::new(a12, f.sub(a.a13, f.mul(a.a14, u.t1)), a.a14)
}

/// `χ̂_A(X) = ϑ(κ(A, X))`.
pub fn chi_hat(field: &Field, a: &Pattern, x: &Pattern) -> Eisenstein {
    theta_char(field, kappa(field, a, x))
}

/// `χ_A(u) = ϑ(κ(A, f(u)))`.
pub fn chi_a(group: &SylowGroup, a: &Pattern, u: &GroupElem) -> Eisenstein {
    chi_hat(group.field(), a, &cocycle_f(group, u))
}

/// Keeps only the rightmost nonzero coordinate of row 1.
pub fn verge_of(a: &Pattern) -> Pattern {
    match Family::of(a) {
        Family::F4 => Pattern::new(FieldElem::ZERO, FieldElem::ZERO, a.a14),
        Family::F3 => Pattern::new(FieldElem::ZERO, a.a13, FieldElem::ZERO),
        Family::F1 | Family::Zero => *a,
    }
}

pub fn is_verge(a: &Pattern) -> bool {
    verge_of(a) == *a
}

/// One `U`-orbit on `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub verge: Pattern,
    /// Sorted, without duplicates.
    pub members: Vec<Pattern>,
    pub stabilizer_order: u64,
    pub family: Family,
}

impl OrbitRecord {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, c: &Pattern) -> bool {
        self.members.binary_search(c).is_ok()
    }
}

/// Orbit and stabilizer of `A`.
///
/// The dot action of `Y(t1,t3,t4)` does not involve `t4`, so the orbit is
/// swept over `Y(t1,t3,0)` and every fixing pair contributes `q` stabilizer
/// elements. [`orbit_by_full_scan`] checks this against a scan of all of `U`.
pub fn orbit_of(group: &SylowGroup, a: &Pattern) -> OrbitRecord {
    let f = group.field();
    let mut members = Vec::new();
    let mut fixing = 0u64;
    for t1 in f.iter() {
        for t3 in f.iter() {
            let c = act_dot_elem(group, a, &GroupElem::new(t1, t3, FieldElem::ZERO));
            if c == *a {
                fixing += 1;
            }
            members.push(c);
        }
    }
    members.sort_unstable();
    members.dedup();
    let verge = members
        .iter()
        .copied()
        .find(is_verge)
        .unwrap_or_else(|| verge_of(a));
    OrbitRecord {
        verge,
        members,
        stabilizer_order: fixing * group.q(),
        family: Family::of(a),
    }
}

/// Orbit and stabilizer by applying every element of `U`; limited to
/// q ≤ 27.
pub fn orbit_by_full_scan(group: &SylowGroup, a: &Pattern) -> Result<OrbitRecord> {
    if group.q() > 27 {
        return Err(Error::CapExceeded {
            what: "full orbit scan",
            q: group.q(),
            cap: 27,
        });
    }
    let mut members = Vec::new();
    let mut stab = 0u64;
    for u in group.elements()? {
        let c = act_dot_elem(group, a, &u);
        if c == *a {
            stab += 1;
        }
        members.push(c);
    }
    members.sort_unstable();
    members.dedup();
    let verge = members
        .iter()
        .copied()
        .find(is_verge)
        .unwrap_or_else(|| verge_of(a));
    Ok(OrbitRecord {
        verge,
        members,
        stabilizer_order: stab,
        family: Family::of(a),
    })
}

/// Verge representatives in table order: zero, then `A12* e12`, `A13* e13`,
/// `A14* e14` for nonzero coefficients in field order.
pub fn verge_patterns(field: &Field) -> Vec<Pattern> {
    let z = FieldElem::ZERO;
    let mut out = vec![Pattern::ZERO];
    out.extend(field.nonzero().map(|x| Pattern::new(x, z, z)));
    out.extend(field.nonzero().map(|x| Pattern::new(z, x, z)));
    out.extend(field.nonzero().map(|x| Pattern::new(z, z, x)));
    out
}

/// Orbits generated from the verge patterns, checked to partition `V`.
pub fn classify_all(group: &SylowGroup) -> Result<Vec<OrbitRecord>> {
    let q = group.q();
    if q > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "orbit classification",
            q,
            cap: ENUMERATION_CAP,
        });
    }
    let verges = verge_patterns(group.field());
    let records: Vec<OrbitRecord> = crate::par::map(&verges, |v| orbit_of(group, v));

    let qs = q as usize;
    let mut seen = vec![false; qs * qs * qs];
    for r in &records {
        let verges_inside = r.members.iter().filter(|c| is_verge(c)).count();
        if verges_inside != 1 {
            return Err(Error::Invariant(format!(
                "orbit of {} contains {verges_inside} verge patterns",
                r.verge.format(group.field())
            )));
        }
        if r.members.len() as u64 * r.stabilizer_order != group.order() {
            return Err(Error::Invariant(format!(
                "orbit-stabilizer fails for {}",
                r.verge.format(group.field())
            )));
        }
        for c in &r.members {
            let i = c.index(qs);
            if seen[i] {
                return Err(Error::Invariant(format!(
                    "pattern {} lies in two orbits",
                    c.format(group.field())
                )));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invariant("orbits do not cover V".into()));
    }
    Ok(records)
}

/// Character of the orbit module at `u`: the sum of `χ_C(u)` over the orbit
/// members `C` with `C.u = C`.
pub fn orbit_character(group: &SylowGroup, record: &OrbitRecord, u: &GroupElem) -> Eisenstein {
    let fu = cocycle_f(group, u);
    let f = group.field();
    let p = f.pow_3theta(u.t1);
    let mut trace = [0i128; 3];
    for c in &record.members {
        // C.u = C  iff  A14 t1 = 0 and A13 t1^(3θ) + A14 t3 = 0
        let fixed = f.mul(c.a14, u.t1).is_zero()
            && f.add(f.mul(c.a13, p), f.mul(c.a14, u.t3)).is_zero();
        if fixed {
            trace[f.trace(kappa(f, c, &fu)) as usize] += 1;
        }
    }
    Eisenstein::int(trace[0]) + Eisenstein::OMEGA.scale(trace[1]) + Eisenstein::OMEGA_SQ.scale(trace[2])
}
