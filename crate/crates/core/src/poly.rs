//! Sparse Laurent–Puiseux polynomials in `K[x*, y]`.
//!
//! The `x` exponents are arbitrary rational vectors, the `y` exponents are
//! nonnegative integers. Terms are kept in a `BTreeMap` keyed by
//! `(xexp, ydeg)` compared as plain tuples, so the canonical form does not
//! depend on any weight.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::numeric::{zero_vec, ExpVec, Rat, Val, WeightMatrix, YDeg};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: ExpVec,
    pub y: YDeg,
}

impl Monomial {
    pub fn one(nx: usize, ny: usize) -> Self {
        Monomial {
            x: zero_vec(nx),
            y: vec![0; ny],
        }
    }

    pub fn is_y_free(&self) -> bool {
        self.y.iter().all(|&b| b == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A single nonzero term `coeff · x^xexp · y^ydeg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rat,
    pub xexp: ExpVec,
    pub ydeg: YDeg,
}

impl Term {
    /// A monomial in `x` only.
    pub fn x_monomial(coeff: Rat, xexp: ExpVec, ny: usize) -> Self {
        Term {
            coeff,
            xexp,
            ydeg: vec![0; ny],
        }
    }
}

/// Weight `η` on the `y` variables. `Λ(η)` is the set of finite entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaVec(pub Vec<Val>);

impl EtaVec {
    pub fn all_infinite(m: usize) -> Self {
        EtaVec(vec![Val::Infinite; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices with a finite weight.
    pub fn lambda(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_infinite()).collect()
    }

    /// `Σ η_i β_i`, skipping `β_i = 0` so that `∞·0 = 0`.
    pub fn dot(&self, beta: &[u32], base: Val) -> Val {
        let mut acc = base;
        for (eta, &b) in self.0.iter().zip(beta) {
            if b == 0 {
                continue;
            }
            match eta {
                Val::Infinite => return Val::Infinite,
                Val::Finite(_) => acc = &acc + &eta.scale(&Rat::from_integer(b.into()), 0),
            }
        }
        acc
    }

    /// `k·η`, with `∞` entries left at `∞`.
    pub fn scale(&self, k: &Rat) -> EtaVec {
        debug_assert!(!k.is_zero());
        EtaVec(self.0.iter().map(|v| v.scale(k, 0)).collect())
    }
}

impl fmt::Display for EtaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPoly {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl LPoly {
    pub fn zero(nx: usize, ny: usize) -> Self {
        LPoly {
            nx,
            ny,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, nx: usize, ny: usize) -> Self {
        let mut p = LPoly::zero(nx, ny);
        p.add_term(Monomial::one(nx, ny), c);
        p
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        LPoly::constant(Rat::one(), nx, ny)
    }

    pub fn x_var(i: usize, nx: usize, ny: usize) -> Self {
        let mut m = Monomial::one(nx, ny);
        m.x[i] = Rat::one();
        LPoly::from_monomial(m, Rat::one(), nx, ny)
    }

    pub fn y_var(i: usize, nx: usize, ny: usize) -> Self {
        let mut m = Monomial::one(nx, ny);
        m.y[i] = 1;
        LPoly::from_monomial(m, Rat::one(), nx, ny)
    }

    pub fn from_monomial(m: Monomial, c: Rat, nx: usize, ny: usize) -> Self {
        let mut p = LPoly::zero(nx, ny);
        p.add_term(m, c);
        p
    }

    pub fn from_term(t: &Term, nx: usize) -> Self {
        let ny = t.ydeg.len();
        let m = Monomial {
            x: t.xexp.clone(),
            y: t.ydeg.clone(),
        };
        LPoly::from_monomial(m, t.coeff.clone(), nx, ny)
    }

    pub fn from_terms(nx: usize, ny: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut p = LPoly::zero(nx, ny);
        for t in terms {
            assert_eq!(t.xexp.len(), nx);
            assert_eq!(t.ydeg.len(), ny);
            p.add_term(Monomial { x: t.xexp, y: t.ydeg }, t.coeff);
        }
        p
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.clone(),
                xexp: m.x.clone(),
                ydeg: m.y.clone(),
            })
            .collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Whether no term involves a `y` variable.
    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_y_free)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &Rat) -> LPoly {
        if k.is_zero() {
            return LPoly::zero(self.nx, self.ny);
        }
        LPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> LPoly {
        let mut base = self.clone();
        let mut acc = LPoly::one(self.nx, self.ny);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The `(ω, η)`-value `Wα + η·β` of a monomial.
    pub fn term_value(w: &WeightMatrix, eta: &EtaVec, m: &Monomial) -> Val {
        eta.dot(&m.y, w.value(&m.x))
    }

    /// `(ω, η)`-order: the minimal term value, `∞` for the zero polynomial.
    pub fn ord_w_eta(&self, w: &WeightMatrix, eta: &EtaVec) -> Val {
        self.terms
            .keys()
            .map(|m| LPoly::term_value(w, eta, m))
            .min()
            .unwrap_or(Val::Infinite)
    }

    /// `(ω, η)`-initial part: the terms attaining the order. Zero when the
    /// order is `∞`.
    pub fn in_w_eta(&self, w: &WeightMatrix, eta: &EtaVec) -> LPoly {
        let vals: Vec<(Val, (&Monomial, &Rat))> = self
            .terms
            .iter()
            .map(|t| (LPoly::term_value(w, eta, t.0), t))
            .collect();
        let mut out = LPoly::zero(self.nx, self.ny);
        let Some(min) = vals.iter().map(|(v, _)| v).min().cloned() else {
            return out;
        };
        if min.is_infinite() {
            return out;
        }
        for (v, (m, c)) in vals {
            if v == min {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Ord under the weight for a polynomial without `y`.
    pub fn x_order(&self, w: &WeightMatrix) -> Val {
        self.ord_w_eta(w, &EtaVec::all_infinite(self.ny))
    }

    /// `x ↦ x^k`: multiplies every `x` exponent by `k`.
    pub fn subs_ramify(&self, k: u64) -> LPoly {
        assert!(k >= 1, "ramification index must be positive");
        let k = Rat::from_integer(k.into());
        LPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let x = m.x.iter().map(|a| a * &k).collect();
                    (Monomial { x, y: m.y.clone() }, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `y_i ← subs[i]` for every `Some` entry and leaves the
    /// other `y_i` in place.
    pub fn substitute_y(&self, subs: &[Option<LPoly>]) -> LPoly {
        assert_eq!(subs.len(), self.ny);
        let mut powers: Vec<Vec<LPoly>> = subs
            .iter()
            .map(|s| match s {
                Some(p) => vec![LPoly::one(p.nx, p.ny)],
                None => Vec::new(),
            })
            .collect();
        let mut out = LPoly::zero(self.nx, self.ny);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut acc = LPoly::one(self.nx, self.ny);
            for (i, s) in subs.iter().enumerate() {
                let Some(s) = s else { continue };
                let b = m.y[i] as usize;
                kept.y[i] = 0;
                if b == 0 {
                    continue;
                }
                while powers[i].len() <= b {
                    let next = &powers[i][powers[i].len() - 1] * s;
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][b];
            }
            for (am, ac) in acc.terms {
                out.add_term(am.mul(&kept), ac * c);
            }
        }
        out
    }

    /// `y_i ← y_i + m_i`, where each `m_i` is a monomial in `x` (or absent).
    pub fn subs_shift(&self, m: &[Option<Term>]) -> LPoly {
        let subs: Vec<Option<LPoly>> = m
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.as_ref().map(|t| {
                    &LPoly::y_var(i, self.nx, self.ny) + &LPoly::from_term(t, self.nx)
                })
            })
            .collect();
        self.substitute_y(&subs)
    }

    /// Sets `y_i = 0` for every flagged coordinate.
    pub fn retire(&self, retired: &[bool]) -> LPoly {
        let mut out = LPoly::zero(self.nx, self.ny);
        for (m, c) in &self.terms {
            if m.y.iter().zip(retired).all(|(&b, &r)| !r || b == 0) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The terms without `y`, i.e. `f(x, 0)`.
    pub fn y_free_part(&self) -> LPoly {
        self.retire(&vec![true; self.ny])
    }

    /// `f(1, y)`: every `x` set to one, like `y`-monomials collected.
    pub fn eval_x_one(&self) -> LPoly {
        let mut out = LPoly::zero(self.nx, self.ny);
        for (m, c) in &self.terms {
            let m = Monomial {
                x: zero_vec(self.nx),
                y: m.y.clone(),
            };
            out.add_term(m, c.clone());
        }
        out
    }

    /// `f(x, s)` for finite sums `s_i` in `x` alone.
    pub fn eval_series(&self, s: &[LPoly]) -> LPoly {
        let subs: Vec<Option<LPoly>> = s.iter().cloned().map(Some).collect();
        self.substitute_y(&subs)
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, names }
    }
}

impl Add for &LPoly {
    type Output = LPoly;

    fn add(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LPoly {
    type Output = LPoly;

    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &LPoly {
    type Output = LPoly;

    fn neg(self) -> LPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &LPoly {
    type Output = LPoly;

    fn mul(self, rhs: &LPoly) -> LPoly {
        let mut out = LPoly::zero(self.nx, self.ny);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Variable names used when printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

impl VarNames {
    pub fn default_for(nx: usize, ny: usize) -> Self {
        VarNames {
            x: (1..=nx).map(|i| format!("x{i}")).collect(),
            y: (1..=ny).map(|i| format!("y{i}")).collect(),
        }
    }
}

fn fmt_exponent(e: &Rat) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

/// Writes `coeff·x^a·y^b` in the problem-file syntax.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    first: bool,
    m: &Monomial,
    c: &Rat,
    names: &VarNames,
) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    for (e, name) in m.x.iter().zip(&names.x) {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            factors.push(name.clone());
        } else {
            factors.push(format!("{name}^{}", fmt_exponent(e)));
        }
    }
    for (&b, name) in m.y.iter().zip(&names.y) {
        match b {
            0 => {}
            1 => factors.push(name.clone()),
            _ => factors.push(format!("{name}^{b}")),
        }
    }
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if factors.is_empty() {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    f.write_str(&factors.join("*"))
}

pub struct DisplayPoly<'a> {
    poly: &'a LPoly,
    names: &'a VarNames,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            write_term(f, i == 0, m, c, self.names)?;
        }
        Ok(())
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VarNames::default_for(self.nx, self.ny);
        self.display_with(&names).fmt(f)
    }
}
