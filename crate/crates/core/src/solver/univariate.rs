//! Dense univariate polynomials over `Q` and their rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{lcm_denominators, Rat};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rat>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    fn monic(&self) -> UniPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => UniPoly(self.0.iter().map(|c| c / lead).collect()),
        }
    }

    /// Remainder of `self` divided by `d`.
    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r[r.len() - 1].clone() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Synthetic division by `t - root`; `None` when `root` is not a root.
    fn deflate(&self, root: &Rat) -> Option<UniPoly> {
        let n = self.0.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for i in (1..n).rev() {
            carry = &carry * root + &self.0[i];
            q[i - 1] = carry.clone();
        }
        let rem = carry * root + &self.0[0];
        rem.is_zero().then(|| UniPoly::new(q))
    }
}

/// Rational roots (without multiplicity, ascending) and the degree of the
/// cofactor left after dividing them out with multiplicity.
pub fn rational_roots(p: &UniPoly) -> (Vec<Rat>, usize) {
    let Some(deg) = p.degree() else {
        return (Vec::new(), 0);
    };
    if deg == 0 {
        return (Vec::new(), 0);
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    if p.0[0].is_zero() {
        roots.push(Rat::zero());
        while rest.0.first().is_some_and(Zero::is_zero) {
            rest = UniPoly::new(rest.0[1..].to_vec());
        }
    }
    for cand in candidates(&rest) {
        let mut hit = false;
        while let Some(q) = rest.deflate(&cand) {
            rest = q;
            hit = true;
        }
        if hit {
            roots.push(cand);
        }
    }
    roots.sort();
    let left = rest.degree().unwrap_or(0);
    (roots, left)
}

/// Candidates `±p/q` with `p | a_0`, `q | a_n` of the primitive integer form.
fn candidates(p: &UniPoly) -> Vec<Rat> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let l = lcm_denominators(p.0.iter());
    let ints: Vec<BigInt> = p
        .0
        .iter()
        .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let mut out = Vec::new();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            let r = Rat::new(num.clone(), den.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.is_positive());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
