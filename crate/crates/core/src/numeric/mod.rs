//! Exact rationals, exponent vectors and the value space of the weight.
//!
//! A generic real weight `ω` with rationally independent coordinates is
//! replaced by a rank-`N` rational matrix `W`: the value of an exponent
//! `α` is the vector `Wα`, compared lexicographically. Because `W` is
//! injective, distinct exponents never tie, and every operation the
//! expansion needs (sums, rational multiples, comparisons) stays exact.

pub mod linalg;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use linalg::LinSolve;

pub type Rat = BigRational;

/// Exponent of a monomial `x^α`, one rational per parameter.
pub type ExpVec = Vec<Rat>;

/// Exponent of `y^β`.
pub type YDeg = Vec<u32>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

/// An element of the value group, or `∞`.
///
/// Finite values compare lexicographically. `∞` is larger than every
/// finite value and absorbs addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(Vec<Rat>),
    Infinite,
}

impl Val {
    pub fn zero(d: usize) -> Self {
        Val::Finite(zero_vec(d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinite)
    }

    pub fn finite(&self) -> Option<&[Rat]> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    /// Lexicographically positive.
    pub fn is_positive(&self) -> bool {
        match self {
            Val::Finite(v) => v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive()),
            Val::Infinite => true,
        }
    }

    /// `k·v` with `∞·a = ∞` for `a ≠ 0` and `∞·0 = 0`.
    ///
    /// `dim` is the dimension of the zero value returned for `∞·0`.
    pub fn scale(&self, k: &Rat, dim: usize) -> Val {
        match self {
            Val::Infinite if k.is_zero() => Val::zero(dim),
            Val::Infinite => Val::Infinite,
            Val::Finite(v) => Val::Finite(v.iter().map(|c| c * k).collect()),
        }
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
            (Val::Infinite, Val::Finite(_)) => Ordering::Greater,
            (Val::Finite(_), Val::Infinite) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => {
                debug_assert_eq!(a.len(), b.len(), "values of different dimension");
                a.cmp(b)
            }
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Val {
    type Output = Val;

    fn add(self, rhs: &Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => {
                Val::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => Val::Infinite,
        }
    }
}

impl Add for Val {
    type Output = Val;

    fn add(self, rhs: Val) -> Val {
        &self + &rhs
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Infinite => f.write_str("inf"),
            Val::Finite(v) => {
                f.write_str("(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Three-way comparison of values.
pub fn val_cmp(u: &Val, v: &Val) -> Ordering {
    u.cmp(v)
}

/// A `d × N` rational matrix of rank `N` standing in for the weight `ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: Vec<Vec<Rat>>,
    n: usize,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        let rank = linalg::rank(&rows);
        if rank != n {
            return Err(Error::RankDeficient { rank, needed: n });
        }
        Ok(WeightMatrix { rows, n })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        WeightMatrix { rows, n }
    }

    /// Number of parameters `N`.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Dimension `d` of the value space.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// `Wα`, panicking on a length mismatch. Hot-path variant of [`val_of_exp`].
    pub(crate) fn apply(&self, a: &[Rat]) -> Vec<Rat> {
        assert_eq!(a.len(), self.n, "exponent length does not match weight");
        self.rows
            .iter()
            .map(|row| row.iter().zip(a).fold(Rat::zero(), |acc, (w, x)| acc + w * x))
            .collect()
    }

    pub(crate) fn value(&self, a: &[Rat]) -> Val {
        Val::Finite(self.apply(a))
    }
}

/// The value `Wα` of the exponent `α`.
pub fn val_of_exp(w: &WeightMatrix, a: &[Rat]) -> Result<Val> {
    if a.len() != w.n {
        return Err(Error::DimensionMismatch {
            expected: w.n,
            got: a.len(),
        });
    }
    Ok(w.value(a))
}

/// The unique exponent `γ` with `Wγ = v`.
pub fn solve_gamma_row(w: &WeightMatrix, v: &Val) -> Result<ExpVec> {
    let Val::Finite(v) = v else {
        return Err(Error::NotInImage);
    };
    if v.len() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: v.len(),
        });
    }
    let rhs: Vec<Vec<Rat>> = v.iter().map(|c| vec![c.clone()]).collect();
    match linalg::solve(&w.rows, &rhs, w.n) {
        LinSolve::Unique(mut sols) => Ok(sols.pop().unwrap_or_default()),
        LinSolve::Inconsistent => Err(Error::NotInImage),
        // rank N is checked at construction
        LinSolve::Underdetermined => unreachable!("weight matrix lost full column rank"),
    }
}

/// Least common multiple of the denominators of `vals`; `1` for an empty set.
pub fn lcm_denominators<'a>(vals: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    vals.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wm(rows: &[&[i64]]) -> WeightMatrix {
        WeightMatrix::new(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).unwrap()
    }

    fn fin(v: &[Rat]) -> Val {
        Val::Finite(v.to_vec())
    }

    #[test]
    fn val_of_exp_examples() {
        let id = WeightMatrix::identity(2);
        assert_eq!(val_of_exp(&id, &[rat(0), rat(0)]).unwrap(), fin(&[rat(0), rat(0)]));
        assert_eq!(val_of_exp(&id, &[rat(2), rat(1)]).unwrap(), fin(&[rat(2), rat(1)]));
        let w = wm(&[&[1, 1], &[0, 1]]);
        assert_eq!(val_of_exp(&w, &[rat(1), rat(-1)]).unwrap(), fin(&[rat(0), rat(-1)]));
        assert!(matches!(
            val_of_exp(&w, &[rat(1)]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn val_cmp_examples() {
        assert_eq!(val_cmp(&fin(&[rat(1), rat(0)]), &fin(&[rat(1), rat(0)])), Ordering::Equal);
        assert_eq!(val_cmp(&fin(&[rat(1), rat(-5)]), &fin(&[rat(1), rat(0)])), Ordering::Less);
        assert_eq!(val_cmp(&Val::Infinite, &fin(&[rat(100), rat(100)])), Ordering::Greater);
    }

    #[test]
    fn solve_gamma_row_examples() {
        let id = WeightMatrix::identity(2);
        let half = ratio(1, 2);
        assert_eq!(
            solve_gamma_row(&id, &fin(&[half.clone(), half.clone()])).unwrap(),
            vec![half.clone(), half]
        );
        let w = wm(&[&[1, 1], &[0, 1]]);
        assert_eq!(solve_gamma_row(&w, &fin(&[rat(0), rat(-1)])).unwrap(), vec![rat(1), rat(-1)]);
        let tall = wm(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            solve_gamma_row(&tall, &fin(&[rat(1), rat(0), rat(0)])),
            Err(Error::NotInImage)
        );
        assert_eq!(solve_gamma_row(&id, &Val::Infinite), Err(Error::NotInImage));
    }

    #[test]
    fn rank_deficient_weight_rejected() {
        let rows = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(
            WeightMatrix::new(rows),
            Err(Error::RankDeficient { rank: 1, needed: 2 })
        );
    }

    #[test]
    fn infinity_conventions() {
        let two = fin(&[rat(2)]);
        assert_eq!(&Val::Infinite + &two, Val::Infinite);
        assert_eq!(Val::Infinite.scale(&rat(0), 1), Val::zero(1));
        assert_eq!(Val::Infinite.scale(&rat(3), 1), Val::Infinite);
        assert_eq!(two.scale(&ratio(1, 2), 1), fin(&[rat(1)]));
    }

    #[test]
    fn positivity_is_lexicographic() {
        assert!(fin(&[rat(0), rat(1)]).is_positive());
        assert!(!fin(&[rat(0), rat(0)]).is_positive());
        assert!(!fin(&[rat(-1), rat(9)]).is_positive());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(fmt_rat(&ratio(4, 2)), "2");
        assert_eq!(fmt_rat(&ratio(-1, 2)), "-1/2");
    }
}
