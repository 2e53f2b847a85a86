//! Candidate weights `η` on the generator-level tropical prevariety.
//!
//! `(ω, η)` is a prevariety point when no generator has a monomial as its
//! `(ω, η)`-initial form. With a tie-free `ω`, a non-monomial initial form
//! needs two terms of equal value and different `y`-degree, so every
//! finite candidate is the solution of a linear system built from one
//! such tie per generator:
//!
//! ```text
//! η · (β − β′) = W (α′ − α)
//! ```
//!
//! The systems are explored depth first, one generator at a time, and a
//! branch stops as soon as its ties pin `η` down uniquely.

use std::collections::BTreeMap;

use crate::numeric::linalg::{self, LinSolve};
use crate::numeric::{Rat, Val, WeightMatrix};
use crate::par::{self, Exec};
use crate::poly::{EtaVec, LPoly, Monomial};

pub type SupportPoint = Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaCandidate {
    pub eta: EtaVec,
    /// Per generator, the support points attaining the order. Empty for
    /// generators that vanish once the retired coordinates are set to zero.
    pub witness: Vec<Vec<SupportPoint>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Candidates {
    /// Sorted by `η`, without duplicates.
    pub candidates: Vec<EtaCandidate>,
    /// Tie systems that were consistent but left a positive-dimensional
    /// set of solutions. These are reported, never enumerated.
    pub underdetermined: usize,
}

impl Candidates {
    pub fn etas(&self) -> Vec<EtaVec> {
        self.candidates.iter().map(|c| c.eta.clone()).collect()
    }
}

/// Whether no generator has a monomial `(ω, η)`-initial form.
pub fn is_prevariety_point(gens: &[LPoly], w: &WeightMatrix, eta: &EtaVec) -> bool {
    gens.iter().all(|g| {
        let init = g.in_w_eta(w, eta);
        init.is_zero() || !init.is_monomial()
    })
}

struct Tie<'a> {
    gen: usize,
    a: &'a Monomial,
    row: Vec<Rat>,
    rhs: Vec<Rat>,
}

struct Search<'a> {
    gens: &'a [LPoly],
    w: &'a WeightMatrix,
    lambda: &'a [usize],
    m: usize,
    positive_only: bool,
    ties: Vec<Vec<Tie<'a>>>,
}

#[derive(Default)]
struct Found {
    etas: BTreeMap<EtaVec, EtaCandidate>,
    underdetermined: usize,
}

impl Found {
    fn merge(&mut self, other: Found) {
        self.etas.extend(other.etas);
        self.underdetermined += other.underdetermined;
    }
}

impl<'a> Search<'a> {
    fn descend<'s>(&'s self, chosen: &mut Vec<&'s Tie<'a>>, depth: usize, found: &mut Found) {
        let rows: Vec<Vec<Rat>> = chosen.iter().map(|t| t.row.clone()).collect();
        let rhs: Vec<Vec<Rat>> = chosen.iter().map(|t| t.rhs.clone()).collect();
        let outcome = if rows.is_empty() {
            LinSolve::Underdetermined
        } else {
            linalg::solve(&rows, &rhs, self.lambda.len())
        };
        match outcome {
            LinSolve::Inconsistent => {}
            LinSolve::Unique(cols) => {
                if let Some(c) = self.validate(&cols, chosen) {
                    found.etas.entry(c.eta.clone()).or_insert(c);
                }
            }
            LinSolve::Underdetermined if depth == self.ties.len() => {
                found.underdetermined += 1;
            }
            LinSolve::Underdetermined => {
                for t in &self.ties[depth] {
                    chosen.push(t);
                    self.descend(chosen, depth + 1, found);
                    chosen.pop();
                }
            }
        }
    }

    /// `cols[k][j]` is coordinate `k` of the value `η_{λ_j}`.
    fn validate(&self, cols: &[Vec<Rat>], chosen: &[&Tie<'a>]) -> Option<EtaCandidate> {
        let mut eta = EtaVec::all_infinite(self.m);
        for (j, &i) in self.lambda.iter().enumerate() {
            eta.0[i] = Val::Finite(cols.iter().map(|col| col[j].clone()).collect());
        }
        if self.positive_only && !eta.0.iter().all(Val::is_positive) {
            return None;
        }
        let mut witness = Vec::with_capacity(self.gens.len());
        for g in self.gens {
            let init = g.in_w_eta(self.w, &eta);
            if !init.is_zero() && init.is_monomial() {
                return None;
            }
            witness.push(init.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>());
        }
        let attained = chosen
            .iter()
            .all(|t| witness[t.gen].iter().any(|m| m == t.a));
        attained.then_some(EtaCandidate { eta, witness })
    }
}

/// Enumerates the `η` with `Λ(η) = lambda` at which `(ω, η)` is a
/// prevariety point of `gens`.
///
/// The coordinates outside `lambda` are set to zero first; generators that
/// vanish are dropped. With `positive_only`, every finite `η_i` must be
/// lexicographically positive.
pub fn candidate_etas(
    gens: &[LPoly],
    w: &WeightMatrix,
    lambda: &[usize],
    positive_only: bool,
    exec: Exec,
) -> Candidates {
    let Some(m) = gens.first().map(LPoly::ny) else {
        return Candidates::default();
    };
    let mut retired = vec![true; m];
    for &i in lambda {
        retired[i] = false;
    }
    let restricted: Vec<LPoly> = gens
        .iter()
        .map(|g| g.retire(&retired))
        .filter(|g| !g.is_zero())
        .collect();

    if lambda.is_empty() {
        let mut out = Candidates::default();
        if restricted.is_empty() {
            out.candidates.push(EtaCandidate {
                eta: EtaVec::all_infinite(m),
                witness: vec![Vec::new(); gens.len()],
            });
        }
        return out;
    }

    let mut ties: Vec<Vec<Tie>> = Vec::with_capacity(restricted.len());
    for (gi, g) in restricted.iter().enumerate() {
        let terms: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
        let mut gen_ties = Vec::new();
        for (p, a) in terms.iter().enumerate() {
            for b in &terms[p + 1..] {
                if a.y == b.y {
                    continue;
                }
                let row = lambda
                    .iter()
                    .map(|&i| Rat::from_integer((i64::from(a.y[i]) - i64::from(b.y[i])).into()))
                    .collect();
                let diff: Vec<Rat> = b.x.iter().zip(&a.x).map(|(u, v)| u - v).collect();
                gen_ties.push(Tie {
                    gen: gi,
                    a,
                    row,
                    rhs: w.apply(&diff),
                });
            }
        }
        if gen_ties.is_empty() {
            // every pair of terms differs in x only, so some term is strictly smallest
            return Candidates::default();
        }
        ties.push(gen_ties);
    }
    if ties.is_empty() {
        return Candidates {
            candidates: Vec::new(),
            underdetermined: 1,
        };
    }
    ties.sort_by_key(Vec::len);
    let search = Search {
        gens: &restricted,
        w,
        lambda,
        m,
        positive_only,
        ties,
    };

    let top: Vec<&Tie> = search.ties.first().map(|l| l.iter().collect()).unwrap_or_default();
    let results = par::map(exec, &top, |t| {
        let mut found = Found::default();
        let mut chosen = vec![*t];
        search.descend(&mut chosen, 1, &mut found);
        found
    });
    let mut all = Found::default();
    for f in results {
        all.merge(f);
    }

    // witnesses are reported against the caller's generator list
    let candidates = all
        .etas
        .into_values()
        .map(|c| EtaCandidate {
            witness: gens
                .iter()
                .map(|g| g.in_w_eta(w, &c.eta).terms().map(|(m, _)| m.clone()).collect())
                .collect(),
            eta: c.eta,
        })
        .collect();
    Candidates {
        candidates,
        underdetermined: all.underdetermined,
    }
}
