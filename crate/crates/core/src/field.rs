//! Arithmetic in GF(3^(2m+1)).
//!
//! Elements are stored as the base-3 integer `c0 + 3 c1 + 9 c2 + ...` of
//! their residue-polynomial coefficients, so that [`FieldElem`] is a plain
//! `Copy` value and the derived `Ord` is the canonical element order. All
//! operations go through a [`Field`], which owns the modulus and the
//! log/exp, addition and Frobenius tables built at construction.
//!
//! The modulus is the lexicographically least monic irreducible polynomial
//! of degree `2m+1`, coefficients compared from the constant term upwards.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported tower index. Degree 13 keeps every table below 2^21
/// entries.
pub const MAX_TOWER: u32 = 6;

/// Largest field for which exhaustive enumeration is permitted.
pub const ENUMERATION_CAP: u64 = 243;

/// Addition is tabulated up to this field size; beyond it the digits are
/// added one by one.
const ADD_TABLE_CAP: u32 = 243;

/// An element of GF(3^n), encoded as the base-3 integer of its coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position of the element in the canonical order.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An exponent of the shape `c1 * theta + c0`, as it appears in the
/// coordinates of the twisted group (`3θ+1`, `6θ+3`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpForm {
    pub theta_coeff: u32,
    pub constant: u32,
}

impl ExpForm {
    pub const fn new(theta_coeff: u32, constant: u32) -> Self {
        ExpForm {
            theta_coeff,
            constant,
        }
    }
}

/// The field GF(3^(2m+1)) together with its lookup tables.
#[derive(Clone)]
pub struct Field {
    m: u32,
    degree: usize,
    q: u32,
    theta: u64,
    modulus: Vec<u8>,
    pow3: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    trace: Vec<u8>,
    frob_3theta: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds GF(3^(2m+1)) with the canonical modulus.
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_TOWER {
            return Err(Error::UnsupportedTower { m, max: MAX_TOWER });
        }
        let degree = 2 * m as usize + 1;
        let modulus = least_irreducible(degree);
        if !is_irreducible(&modulus) {
            return Err(Error::Invariant(format!(
                "modulus {modulus:?} failed the irreducibility re-check"
            )));
        }
        let q = 3u32.pow(degree as u32);
        let pow3: Vec<u32> = (0..degree).map(|i| 3u32.pow(i as u32)).collect();

        let mut field = Field {
            m,
            degree,
            q,
            theta: 3u64.pow(m),
            modulus,
            pow3,
            add_table: None,
            neg_table: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
            trace: Vec::new(),
            frob_3theta: Vec::new(),
        };
        field.neg_table = (0..q).map(|v| field.neg_digits(v)).collect();
        if q <= ADD_TABLE_CAP {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(field.add_digits(a, b));
                }
            }
            field.add_table = Some(table);
        }
        field.build_log_tables();

        let trace: Vec<u8> = (0..q)
            .map(|v| field.trace_slow(FieldElem(v)))
            .collect::<Result<_>>()?;
        field.trace = trace;
        field.frob_3theta = (0..q)
            .map(|v| field.frob_pow(FieldElem(v), m + 1).0)
            .collect();
        Ok(field)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// θ = 3^m.
    pub fn theta(&self) -> u64 {
        self.theta
    }

    /// Modulus coefficients, low to high, monic.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(3) as u32)
    }

    /// Builds an element from its coefficient vector (low to high).
    pub fn elem(&self, coeffs: &[u8]) -> Result<FieldElem> {
        if coeffs.len() != self.degree {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                self.degree,
                coeffs.len()
            )));
        }
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c > 2 {
                return Err(Error::Parse(format!("coefficient {c} is not a digit 0..2")));
            }
            v += c as u32 * self.pow3[i];
        }
        Ok(FieldElem(v))
    }

    /// Element with the given canonical index.
    pub fn from_index(&self, index: usize) -> Result<FieldElem> {
        if index >= self.q as usize {
            return Err(Error::Parse(format!(
                "index {index} out of range for GF({})",
                self.q
            )));
        }
        Ok(FieldElem(index as u32))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u8> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let d = (v % 3) as u8;
                v /= 3;
                d
            })
            .collect()
    }

    /// Parses the textual form `c0,c1,...,c_{2m}`.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad field digit {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        self.elem(&coeffs)
    }

    pub fn format(&self, a: FieldElem) -> String {
        self.coeffs(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.add_table {
            Some(t) => FieldElem(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::Domain { op: "inv" });
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElem(self.exp[((order - l) % order) as usize]))
    }

    /// `a^e` for an arbitrary non-negative exponent, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a^(3^k)`.
    pub fn frob_pow(&self, a: FieldElem, k: u32) -> FieldElem {
        if a.0 == 0 {
            return a;
        }
        let order = (self.q - 1) as u64;
        let e = mod_pow(3, k as u64, order);
        let l = self.log[a.0 as usize] as u64;
        FieldElem(self.exp[((l * e) % order) as usize])
    }

    /// `a^(3θ)`, tabulated.
    #[inline]
    pub fn pow_3theta(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.frob_3theta[a.0 as usize])
    }

    /// `a^(c1·θ + c0)` with `c1 ∈ {0, 3, 6}`: the θ-part goes through the
    /// Frobenius, the constant part through repeated multiplication.
    pub fn power_expr(&self, a: FieldElem, e: ExpForm) -> FieldElem {
        let frob = match e.theta_coeff {
            0 => FieldElem::ONE,
            3 => self.pow_3theta(a),
            6 => {
                let t = self.pow_3theta(a);
                self.mul(t, t)
            }
            c => {
                // not used by the group formulas, kept total
                self.pow(a, c as u64 * self.theta)
            }
        };
        let mut acc = frob;
        for _ in 0..e.constant {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Absolute trace to F_3, as 0, 1 or 2.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u8 {
        self.trace[a.0 as usize]
    }

    /// All elements in canonical order; refused above [`ENUMERATION_CAP`].
    pub fn elements(&self) -> Result<Vec<FieldElem>> {
        if self.q() > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                what: "field enumeration",
                q: self.q(),
                cap: ENUMERATION_CAP,
            });
        }
        Ok(self.iter().collect())
    }

    /// Iterates all elements in canonical order without the size cap.
    pub fn iter(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.q).map(FieldElem)
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.q).map(FieldElem)
    }

    /// Multiplication by schoolbook product and reduction modulo the
    /// modulus; used to build the log tables.
    pub fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let ac = self.coeffs(a);
        let bc = self.coeffs(b);
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                prod[i + j] += x as u32 * y as u32;
            }
        }
        let n = self.degree;
        for i in (n..prod.len()).rev() {
            let c = prod[i] % 3;
            prod[i] = 0;
            if c != 0 {
                // x^n ≡ -(m_0 + ... + m_{n-1} x^{n-1})
                for (j, &mc) in self.modulus[..n].iter().enumerate() {
                    prod[i - n + j] += 3 * 3 - (c * mc as u32) % 3;
                }
            }
        }
        let mut v = 0u32;
        for i in 0..n {
            v += (prod[i] % 3) * self.pow3[i];
        }
        FieldElem(v)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut v = 0;
        for &p in &self.pow3 {
            v += ((a % 3 + b % 3) % 3) * p;
            a /= 3;
            b /= 3;
        }
        v
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let mut v = 0;
        for &p in &self.pow3 {
            v += ((3 - a % 3) % 3) * p;
            a /= 3;
        }
        v
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        if order == 0 {
            return;
        }
        // first element, in canonical order, whose powers exhaust the group
        let mut exp = Vec::new();
        for g in 1..self.q {
            let g = FieldElem(g);
            exp.clear();
            let mut x = FieldElem::ONE;
            for _ in 0..order {
                exp.push(x.0);
                x = self.mul_poly(x, g);
                if x == FieldElem::ONE {
                    break;
                }
            }
            if exp.len() == order as usize {
                break;
            }
        }
        let mut log = vec![0u32; self.q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        // doubled so that log a + log b indexes directly
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        self.exp = doubled;
        self.log = log;
    }

    fn trace_slow(&self, a: FieldElem) -> Result<u8> {
        let mut acc = FieldElem::ZERO;
        let mut x = a;
        for _ in 0..self.degree {
            acc = FieldElem(self.add_digits(acc.0, x.0));
            let sq = self.mul_poly(x, x);
            x = self.mul_poly(sq, x);
        }
        if acc.0 > 2 {
            return Err(Error::Invariant(format!(
                "trace of {} left the prime field",
                self.format(a)
            )));
        }
        Ok(acc.0 as u8)
    }
}

fn mod_pow(base: u64, mut e: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    result
}

/// Remainder of `a` modulo the monic polynomial `f` over F_3 (coefficient
/// vectors low to high).
fn poly_rem(a: &[u8], f: &[u8]) -> Vec<u8> {
    let d = f.len() - 1;
    let mut r: Vec<u8> = a.to_vec();
    if r.len() <= d {
        r.resize(d, 0);
        return r;
    }
    for i in (d..r.len()).rev() {
        let c = r[i] % 3;
        if c == 0 {
            continue;
        }
        for (j, &fc) in f.iter().enumerate() {
            let idx = i - d + j;
            r[idx] = ((r[idx] as u32 + 3 * 3 - (c as u32 * fc as u32) % 3) % 3) as u8;
        }
    }
    r.truncate(d);
    r
}

/// Irreducibility of a monic polynomial over F_3 by trial division with
/// every monic polynomial of degree at most half its degree.
pub fn is_irreducible(f: &[u8]) -> bool {
    let n = f.len() - 1;
    if n == 0 || f[n] != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        let count = 3usize.pow(d as u32);
        for k in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = k;
            for _ in 0..d {
                g.push((v % 3) as u8);
                v /= 3;
            }
            g.push(1);
            if poly_rem(f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of the given
/// degree, coefficients compared from the constant term upwards.
pub fn least_irreducible(degree: usize) -> Vec<u8> {
    let count = 3usize.pow(degree as u32);
    // enumerate coefficient vectors in lexicographic order, c0 first
    for k in 0..count {
        let mut f = vec![0u8; degree + 1];
        let mut v = k;
        for i in (0..degree).rev() {
            f[i] = (v % 3) as u8;
            v /= 3;
        }
        f[degree] = 1;
        if is_irreducible(&f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
