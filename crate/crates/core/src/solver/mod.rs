//! Rational torus solutions of the initial coefficient system.
//!
//! The system is triangularized with a lexicographic Gröbner basis and
//! solved level by level, from the last variable up: at each level the
//! basis elements whose leading variable is the current one are
//! specialized at the partial solution, and the rational roots of their
//! gcd extend it.

pub mod groebner;
pub mod univariate;

use num_traits::Zero;

pub use groebner::{buchberger_lex, buchberger_lex_with_budget, YPoly, DEFAULT_PAIR_BUDGET};
use univariate::{rational_roots, UniPoly};

use crate::error::Result;
use crate::numeric::Rat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusSolutionSet {
    /// Solutions with every coordinate nonzero, sorted.
    pub solutions: Vec<Vec<Rat>>,
    /// Some level had no univariate constraint.
    pub nonzero_dimensional: bool,
    /// Some eliminant kept a factor without rational roots.
    pub irrational_roots_detected: bool,
}

pub fn torus_solutions(system: &[YPoly], nvars: usize) -> Result<TorusSolutionSet> {
    torus_solutions_with_budget(system, nvars, DEFAULT_PAIR_BUDGET)
}

pub fn torus_solutions_with_budget(
    system: &[YPoly],
    nvars: usize,
    budget: usize,
) -> Result<TorusSolutionSet> {
    let mut out = TorusSolutionSet::default();
    let system: Vec<YPoly> = system.iter().filter(|p| !p.is_zero()).cloned().collect();
    if system.is_empty() {
        if nvars == 0 {
            out.solutions.push(Vec::new());
        } else {
            out.nonzero_dimensional = true;
        }
        return Ok(out);
    }
    let basis = buchberger_lex_with_budget(&system, budget)?;
    if basis.iter().any(YPoly::is_constant) {
        return Ok(out);
    }
    // levels[j]: basis elements living in Q[y_j, ..., y_{k-1}] and involving y_j
    let mut levels: Vec<Vec<&YPoly>> = vec![Vec::new(); nvars];
    for g in &basis {
        let j = g.first_var();
        if j < nvars {
            levels[j].push(g);
        }
    }
    let mut partial: Vec<Vec<Rat>> = vec![Vec::new()];
    for j in (0..nvars).rev() {
        let mut next = Vec::new();
        for tail in &partial {
            let specialized: Vec<UniPoly> = levels[j]
                .iter()
                .map(|g| specialize(g, j, tail))
                .filter(|u| !u.is_zero())
                .collect();
            let Some(first) = specialized.first() else {
                out.nonzero_dimensional = true;
                continue;
            };
            let gcd = specialized[1..].iter().fold(first.clone(), |acc, u| acc.gcd(u));
            let (roots, leftover) = rational_roots(&gcd);
            if leftover > 0 {
                out.irrational_roots_detected = true;
            }
            for r in roots.into_iter().filter(|r| !r.is_zero()) {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(r);
                v.extend(tail.iter().cloned());
                next.push(v);
            }
        }
        partial = next;
    }
    partial.retain(|c| system.iter().all(|p| p.eval(c).is_zero()));
    partial.sort();
    out.solutions = partial;
    Ok(out)
}

/// Evaluates `y_{j+1..}` at `tail` and returns the result as a polynomial in `y_j`.
fn specialize(g: &YPoly, j: usize, tail: &[Rat]) -> UniPoly {
    let mut coeffs: Vec<Rat> = Vec::new();
    for (e, c) in g.terms() {
        let d = e[j] as usize;
        let mut t = c.clone();
        for (v, &b) in tail.iter().zip(&e[j + 1..]) {
            for _ in 0..b {
                t *= v;
            }
        }
        if coeffs.len() <= d {
            coeffs.resize(d + 1, Rat::zero());
        }
        coeffs[d] += t;
    }
    UniPoly::new(coeffs)
}
