//! Conjugacy classes of `U`, the maps `ς_t(s) = t s^(3θ) - t^(3θ) s`, and
//! the superclass partition.
//!
//! Conjugating `Y(t1,t3,t4)` by `Y(s1,·,·)` moves `t3` by `ς_{t1}(s1)`, so
//! a class with `t1 ≠ 0` is `{Y(t1, t3 + im ς_{t1}, *)}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, ENUMERATION_CAP};
use crate::group::{GroupElem, SylowGroup};

/// `ς_t(s) = t s^(3θ) - t^(3θ) s`.
pub fn sigma_t(field: &Field, t: FieldElem, s: FieldElem) -> Result<FieldElem> {
    if t.is_zero() {
        return Err(Error::Domain { op: "sigma_t" });
    }
    Ok(field.sub(
        field.mul(t, field.pow_3theta(s)),
        field.mul(field.pow_3theta(t), s),
    ))
}

/// The additive subgroup `im ς_t` as a membership table plus its sorted
/// elements.
#[derive(Clone, Debug)]
pub struct SigmaImage {
    member: Vec<bool>,
    elements: Vec<FieldElem>,
}

impl SigmaImage {
    pub fn new(field: &Field, t: FieldElem) -> Result<Self> {
        let q = field.q() as usize;
        let mut member = vec![false; q];
        for s in field.iter() {
            member[sigma_t(field, t, s)?.index()] = true;
        }
        let elements = field.iter().filter(|x| member[x.index()]).collect();
        Ok(SigmaImage { member, elements })
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        self.member[x.index()]
    }

    pub fn elements(&self) -> &[FieldElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Least element of the coset `x + im ς_t`.
    pub fn coset_min(&self, field: &Field, x: FieldElem) -> FieldElem {
        self.elements
            .iter()
            .map(|&i| field.add(x, i))
            .min()
            .expect("image contains zero")
    }
}

pub fn sigma_kernel(field: &Field, t: FieldElem) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    for s in field.iter() {
        if sigma_t(field, t, s)?.is_zero() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Least representatives of the cosets of `im ς_t`, in increasing order.
pub fn transversal_t(field: &Field, t: FieldElem) -> Result<Vec<FieldElem>> {
    let image = SigmaImage::new(field, t)?;
    let mut reps: Vec<FieldElem> = field.iter().map(|x| image.coset_min(field, x)).collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(reps)
}

/// One conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    /// Least member.
    pub representative: GroupElem,
    /// Sorted.
    pub members: Vec<GroupElem>,
    pub size: usize,
}

impl ClassRecord {
    fn from_members(mut members: Vec<GroupElem>) -> Self {
        members.sort_unstable();
        members.dedup();
        ClassRecord {
            representative: members[0],
            size: members.len(),
            members,
        }
    }
}

/// Class of `x` from its closed-form description.
pub fn class_of(group: &SylowGroup, x: &GroupElem) -> ClassRecord {
    let f = group.field();
    if !x.t1.is_zero() {
        let image = SigmaImage::new(f, x.t1).expect("t1 is nonzero");
        let mut members = Vec::with_capacity(image.len() * group.q() as usize);
        for &i in image.elements() {
            let t3 = f.add(x.t3, i);
            members.extend(f.iter().map(|t4| GroupElem::new(x.t1, t3, t4)));
        }
        ClassRecord::from_members(members)
    } else if !x.t3.is_zero() {
        ClassRecord::from_members(f.iter().map(|t4| GroupElem::new(x.t1, x.t3, t4)).collect())
    } else {
        ClassRecord::from_members(vec![*x])
    }
}

/// Least member of the class of `x`, from the closed form.
pub fn class_representative(group: &SylowGroup, x: &GroupElem) -> GroupElem {
    let f = group.field();
    if !x.t1.is_zero() {
        let image = SigmaImage::new(f, x.t1).expect("t1 is nonzero");
        GroupElem::new(x.t1, image.coset_min(f, x.t3), FieldElem::ZERO)
    } else if !x.t3.is_zero() {
        GroupElem::new(x.t1, x.t3, FieldElem::ZERO)
    } else {
        *x
    }
}

/// Every class from the closed form, sorted by representative.
pub fn all_classes(group: &SylowGroup) -> Result<Vec<ClassRecord>> {
    let f = group.field();
    let q = group.q();
    if q > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "class enumeration",
            q,
            cap: ENUMERATION_CAP,
        });
    }
    let z = FieldElem::ZERO;
    let mut seeds: Vec<GroupElem> = f.iter().map(|t4| GroupElem::new(z, z, t4)).collect();
    seeds.extend(f.nonzero().map(|t3| GroupElem::new(z, t3, z)));
    for t1 in f.nonzero() {
        for t3 in transversal_t(f, t1)? {
            seeds.push(GroupElem::new(t1, t3, z));
        }
    }
    let mut classes = crate::par::map(&seeds, |s| class_of(group, s));
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// Largest field for the brute-force class scan.
pub const BRUTE_FORCE_CAP: u64 = 27;

/// Classes found by conjugating each unvisited element by all of `U`,
/// sorted by representative.
pub fn all_classes_bruteforce(group: &SylowGroup) -> Result<Vec<ClassRecord>> {
    let q = group.q();
    if q > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force classes",
            q,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let elements = group.elements()?;
    let mut seen = vec![false; elements.len()];
    let mut classes = Vec::new();
    for x in &elements {
        if seen[group.index(x)] {
            continue;
        }
        let conjugates = crate::par::map(&elements, |g| group.conjugate(x, g));
        for y in &conjugates {
            seen[group.index(y)] = true;
        }
        classes.push(ClassRecord::from_members(conjugates));
    }
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// `5q - 4`.
pub fn class_count(q: u64) -> u64 {
    5 * q - 4
}

/// `3(q - 1) + 1`.
pub fn superclass_count(q: u64) -> u64 {
    3 * (q - 1) + 1
}

/// Superclass labels in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "t")]
pub enum SuperclassLabel {
    C0,
    C1(FieldElem),
    C3(FieldElem),
    C4(FieldElem),
}

impl SuperclassLabel {
    /// Superclass containing `x`.
    pub fn of(x: &GroupElem) -> SuperclassLabel {
        if !x.t1.is_zero() {
            SuperclassLabel::C1(x.t1)
        } else if !x.t3.is_zero() {
            SuperclassLabel::C3(x.t3)
        } else if !x.t4.is_zero() {
            SuperclassLabel::C4(x.t4)
        } else {
            SuperclassLabel::C0
        }
    }

    /// All labels: `C0`, then `C1`, `C3`, `C4` over nonzero field elements.
    pub fn all(field: &Field) -> Vec<SuperclassLabel> {
        let mut out = vec![SuperclassLabel::C0];
        out.extend(field.nonzero().map(SuperclassLabel::C1));
        out.extend(field.nonzero().map(SuperclassLabel::C3));
        out.extend(field.nonzero().map(SuperclassLabel::C4));
        out
    }

    pub fn format(&self, field: &Field) -> String {
        match self {
            SuperclassLabel::C0 => "C0".to_string(),
            SuperclassLabel::C1(t) => format!("C1({})", field.format(*t)),
            SuperclassLabel::C3(t) => format!("C3({})", field.format(*t)),
            SuperclassLabel::C4(t) => format!("C4({})", field.format(*t)),
        }
    }

    /// A fixed member: `identity`, `Y(t,0,0)`, `b(t)` or `c(t)`.
    pub fn representative(&self, group: &SylowGroup) -> GroupElem {
        let z = FieldElem::ZERO;
        match *self {
            SuperclassLabel::C0 => group.identity(),
            SuperclassLabel::C1(t) => GroupElem::new(t, z, z),
            SuperclassLabel::C3(t) => group.b(t),
            SuperclassLabel::C4(t) => group.c(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Superclass {
    pub label: SuperclassLabel,
    /// Sorted.
    pub members: Vec<GroupElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperclassPartition {
    pub parts: Vec<Superclass>,
}

impl SuperclassPartition {
    pub fn part(&self, label: &SuperclassLabel) -> Option<&Superclass> {
        self.parts.iter().find(|p| p.label == *label)
    }
}

/// Builds `C1(t1*)` from the classes of `Y(t1*, t, 0)` with `t` in the
/// given transversal.
pub fn c1_part(group: &SylowGroup, t1: FieldElem, transversal: &[FieldElem]) -> Vec<GroupElem> {
    let mut members: Vec<GroupElem> = transversal
        .iter()
        .flat_map(|&t| class_of(group, &GroupElem::new(t1, t, FieldElem::ZERO)).members)
        .collect();
    members.sort_unstable();
    members.dedup();
    members
}

/// The superclasses, built from classes and checked to partition `U`.
pub fn superclass_partition(group: &SylowGroup) -> Result<SuperclassPartition> {
    let f = group.field();
    let q = group.q();
    if q > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "superclass partition",
            q,
            cap: ENUMERATION_CAP,
        });
    }
    let labels = SuperclassLabel::all(f);
    let build = |label: &SuperclassLabel| -> Result<Superclass> {
        let members = match *label {
            SuperclassLabel::C0 => vec![group.identity()],
            SuperclassLabel::C1(t1) => c1_part(group, t1, &transversal_t(f, t1)?),
            SuperclassLabel::C3(t3) => class_of(group, &group.b(t3)).members,
            SuperclassLabel::C4(t4) => class_of(group, &group.c(t4)).members,
        };
        Ok(Superclass {
            label: *label,
            members,
        })
    };
    let parts: Vec<Superclass> = crate::par::map(&labels, build)
        .into_iter()
        .collect::<Result<_>>()?;

    let theta_sq = q / 3;
    let mut seen = vec![false; group.order() as usize];
    for p in &parts {
        let want = match p.label {
            SuperclassLabel::C0 => 1,
            SuperclassLabel::C1(_) => 3 * q * theta_sq,
            SuperclassLabel::C3(_) => q,
            SuperclassLabel::C4(_) => 1,
        };
        if p.members.len() as u64 != want {
            return Err(Error::Invariant(format!(
                "{} has {} members, expected {want}",
                p.label.format(f),
                p.members.len()
            )));
        }
        for x in &p.members {
            let i = group.index(x);
            if seen[i] {
                return Err(Error::Invariant(format!(
                    "{} lies in two superclasses",
                    group.format(x)
                )));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invariant("superclasses do not cover U".into()));
    }
    Ok(SuperclassPartition { parts })
}
