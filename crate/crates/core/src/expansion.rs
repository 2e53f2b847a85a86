//! The expansion driver.
//!
//! A branch holds the current ideal `I^(i)` together with the terms found
//! so far. Each step picks a starting ω-set `D = {η, Γ, c}` of the current
//! ideal, appends the monomials `c_i x^{Γ_i}` (rescaled by the cumulative
//! ramification) to the series, and replaces the ideal by
//!
//! ```text
//! I_D = < f(x^{dΓ}, y + M_D(x^{dΓ})) >
//! ```
//!
//! Coordinates with `η_i = ∞` are retired: `y_i` is set to zero and the
//! coordinate receives no further terms. A branch is exact once the
//! all-`∞` set is a starting set, i.e. `y = 0` solves the current ideal.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{lcm_denominators, solve_gamma_row, ExpVec, Rat, Val, WeightMatrix};
use crate::par::{self, Exec};
use crate::poly::{EtaVec, LPoly, Term};
use crate::solver::{torus_solutions_with_budget, YPoly, DEFAULT_PAIR_BUDGET};
use crate::tropical::candidate_etas;

/// The data `{η, Γ, c}` of an M-tuple of monomials `c_i x^{Γ_i}`.
///
/// Invariants: `WΓ_i = η_i` and `c_i ≠ 0` for `i ∈ Λ(η)`; `Γ_i` is absent
/// and `c_i = 0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaSet {
    pub eta: EtaVec,
    pub gamma: Vec<Option<ExpVec>>,
    pub c: Vec<Rat>,
}

impl OmegaSet {
    pub fn new(eta: EtaVec, gamma: Vec<Option<ExpVec>>, c: Vec<Rat>, w: &WeightMatrix) -> Result<Self> {
        let d = OmegaSet { eta, gamma, c };
        d.validate(w)?;
        Ok(d)
    }

    pub fn validate(&self, w: &WeightMatrix) -> Result<()> {
        let m = self.eta.len();
        if self.gamma.len() != m || self.c.len() != m {
            return Err(Error::InvalidOmegaSet("eta, gamma and c differ in length".into()));
        }
        for i in 0..m {
            match (&self.eta.0[i], &self.gamma[i]) {
                (Val::Infinite, None) => {
                    if !self.c[i].is_zero() {
                        return Err(Error::InvalidOmegaSet(format!("c_{} must be 0", i + 1)));
                    }
                }
                (Val::Finite(_), Some(g)) => {
                    if self.c[i].is_zero() {
                        return Err(Error::InvalidOmegaSet(format!("c_{} must be nonzero", i + 1)));
                    }
                    if g.len() != w.nvars() || w.value(g) != self.eta.0[i] {
                        return Err(Error::InvalidOmegaSet(format!(
                            "W·gamma_{} differs from eta_{}",
                            i + 1,
                            i + 1
                        )));
                    }
                }
                _ => {
                    return Err(Error::InvalidOmegaSet(format!(
                        "gamma_{} must be infinite exactly when eta_{} is",
                        i + 1,
                        i + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn lambda(&self) -> Vec<usize> {
        self.eta.lambda()
    }

    pub fn is_all_infinite(&self) -> bool {
        self.eta.0.iter().all(Val::is_infinite)
    }

    /// `{rη, rΓ, c}`.
    pub fn scaled(&self, r: &Rat) -> OmegaSet {
        OmegaSet {
            eta: self.eta.scale(r),
            gamma: self
                .gamma
                .iter()
                .map(|g| g.as_ref().map(|g| g.iter().map(|v| v * r).collect()))
                .collect(),
            c: self.c.clone(),
        }
    }
}

/// The defining data of an M-tuple of monomials; `None` entries are zero.
pub fn defining_data(m: &[Option<Term>], w: &WeightMatrix) -> Result<OmegaSet> {
    let mut eta = Vec::with_capacity(m.len());
    let mut gamma = Vec::with_capacity(m.len());
    let mut c = Vec::with_capacity(m.len());
    for t in m {
        match t {
            Some(t) if !t.coeff.is_zero() => {
                eta.push(crate::numeric::val_of_exp(w, &t.xexp)?);
                gamma.push(Some(t.xexp.clone()));
                c.push(t.coeff.clone());
            }
            _ => {
                eta.push(Val::Infinite);
                gamma.push(None);
                c.push(Rat::zero());
            }
        }
    }
    Ok(OmegaSet {
        eta: EtaVec(eta),
        gamma,
        c,
    })
}

/// `M_D = x^Γ c`.
pub fn mtuple_of(d: &OmegaSet) -> Vec<Option<Term>> {
    let m = d.eta.len();
    d.gamma
        .iter()
        .zip(&d.c)
        .map(|(g, c)| g.as_ref().map(|g| Term::x_monomial(c.clone(), g.clone(), m)))
        .collect()
}

/// Least common multiple of the denominators of the finite rows of `Γ`.
pub fn d_gamma(gamma: &[Option<ExpVec>]) -> Result<u64> {
    let l: BigInt = lcm_denominators(gamma.iter().flatten().flatten());
    l.to_u64().ok_or(Error::RamificationOverflow)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesTerm {
    pub coeff: Rat,
    pub exp: ExpVec,
}

/// One step of an ω-sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceStep {
    pub set: OmegaSet,
    pub d_gamma: u64,
}

/// State of one branch of the expansion tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Generators of the current ideal `I^(i)`.
    pub gens: Vec<LPoly>,
    /// Number of terms appended so far.
    pub step: usize,
    /// `∏_{j<i} dΓ^(j)`.
    pub cum_ram: u64,
    pub acc_terms: Vec<Vec<SeriesTerm>>,
    pub retired: Vec<bool>,
    pub history: Vec<TraceStep>,
    /// `dΓ·η` of the last step, in the variables of the current ideal.
    pub prev_eta: Option<EtaVec>,
}

impl Branch {
    pub fn new(gens: Vec<LPoly>) -> Self {
        let m = gens.first().map_or(0, LPoly::ny);
        Branch {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            step: 0,
            cum_ram: 1,
            acc_terms: vec![Vec::new(); m],
            retired: vec![false; m],
            history: Vec::new(),
            prev_eta: None,
        }
    }

    pub fn ny(&self) -> usize {
        self.retired.len()
    }

    pub fn active(&self) -> Vec<usize> {
        (0..self.ny()).filter(|&i| !self.retired[i]).collect()
    }

    /// `y = 0` solves every generator.
    pub fn zero_solves(&self) -> bool {
        self.gens.iter().all(|g| g.y_free_part().is_zero())
    }

    fn etas(&self) -> Vec<EtaVec> {
        self.history.iter().map(|s| s.set.eta.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesSolution {
    /// Per `y` coordinate, the terms in order of increasing value.
    pub coords: Vec<Vec<SeriesTerm>>,
    /// `K` with every exponent in `(1/K) Z^N`.
    pub ramification: u64,
    /// The series is a finite sum solving the system exactly.
    pub exact: bool,
    pub residual_order: Val,
    pub trace: Vec<TraceStep>,
}

impl SeriesSolution {
    /// Keeps the first `k` terms of every coordinate.
    pub fn truncate(&self, k: usize) -> SeriesSolution {
        SeriesSolution {
            coords: self.coords.iter().map(|c| c.iter().take(k).cloned().collect()).collect(),
            ..self.clone()
        }
    }

    /// The coordinates as polynomials in `x`.
    pub fn as_polys(&self, nx: usize) -> Vec<LPoly> {
        let ny = self.coords.len();
        self.coords
            .iter()
            .map(|terms| {
                LPoly::from_terms(
                    nx,
                    ny,
                    terms
                        .iter()
                        .map(|t| Term::x_monomial(t.coeff.clone(), t.exp.clone(), ny)),
                )
            })
            .collect()
    }
}

/// Why a branch produced no starting set, or lost some of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeadReason {
    NoPrevarietyCandidate,
    StrictIncreaseViolated,
    NoRationalTorusSolution,
    /// The branch continued, but some initial systems had irrational or
    /// positive-dimensional solutions that were not followed.
    SolutionsSkipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagnostic {
    pub step: usize,
    /// `η` of every step leading to the dead branch.
    pub path: Vec<EtaVec>,
    pub reason: DeadReason,
    pub candidates: usize,
    pub underdetermined: usize,
    pub irrational_roots: bool,
    pub nonzero_dimensional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandOptions {
    /// Terms per branch before truncating.
    pub max_terms: usize,
    /// Cap on live branches.
    pub max_branches: usize,
    /// Require `η > 0` at the first step.
    pub positive_only: bool,
    pub exec: Exec,
    /// S-pair cap for each Gröbner basis.
    pub pair_budget: usize,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions {
            max_terms: 4,
            max_branches: 64,
            positive_only: true,
            exec: Exec::default(),
            pair_budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

/// Starting sets of a branch together with the bookkeeping needed to
/// explain an empty result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StartingSets {
    pub sets: Vec<OmegaSet>,
    pub candidates: usize,
    pub increase_rejected: usize,
    pub underdetermined: usize,
    pub irrational_roots: bool,
    pub nonzero_dimensional: bool,
}

impl StartingSets {
    fn dead_reason(&self) -> DeadReason {
        if self.candidates == 0 {
            DeadReason::NoPrevarietyCandidate
        } else if self.increase_rejected == self.candidates {
            DeadReason::StrictIncreaseViolated
        } else {
            DeadReason::NoRationalTorusSolution
        }
    }
}

/// `true` when `new_i > prev_i` for every `i ∈ Λ(new)`.
fn strictly_increases(new: &EtaVec, prev: &EtaVec) -> Option<usize> {
    new.lambda()
        .into_iter()
        .find(|&i| new.0[i].cmp(&prev.0[i]) != Ordering::Greater)
}

/// Starting ω-sets of the branch's current ideal, sorted.
pub fn starting_sets(branch: &Branch, w: &WeightMatrix, opts: &ExpandOptions) -> Result<StartingSets> {
    let mut out = StartingSets::default();
    let active = branch.active();
    let positive_only = opts.positive_only && branch.step == 0;
    let m = branch.ny();
    for mask in 0u64..(1u64 << active.len()) {
        let lambda: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let cands = candidate_etas(&branch.gens, w, &lambda, positive_only, opts.exec);
        out.underdetermined += cands.underdetermined;
        for cand in cands.candidates {
            out.candidates += 1;
            let eta = cand.eta;
            if let Some(prev) = &branch.prev_eta {
                if strictly_increases(&eta, prev).is_some() {
                    out.increase_rejected += 1;
                    continue;
                }
            }
            let system: Vec<YPoly> = branch
                .gens
                .iter()
                .map(|g| g.in_w_eta(w, &eta).eval_x_one())
                .filter(|p| !p.is_zero())
                .map(|p| YPoly::from_lpoly(&p, &lambda))
                .collect();
            let sols = torus_solutions_with_budget(&system, lambda.len(), opts.pair_budget)?;
            out.irrational_roots |= sols.irrational_roots_detected;
            out.nonzero_dimensional |= sols.nonzero_dimensional;
            let mut gamma: Vec<Option<ExpVec>> = vec![None; m];
            for &i in &lambda {
                gamma[i] = Some(solve_gamma_row(w, &eta.0[i])?);
            }
            for sol in sols.solutions {
                let mut c = vec![Rat::zero(); m];
                for (&i, v) in lambda.iter().zip(sol) {
                    c[i] = v;
                }
                out.sets.push(OmegaSet {
                    eta: eta.clone(),
                    gamma: gamma.clone(),
                    c,
                });
            }
        }
    }
    out.sets.sort();
    out.sets.dedup();
    Ok(out)
}

/// Moves a branch to the ideal `I_D`.
pub fn recenter(branch: &Branch, d: &OmegaSet, w: &WeightMatrix) -> Result<Branch> {
    d.validate(w)?;
    let lambda = d.lambda();
    if let Some(&i) = lambda.iter().find(|&&i| branch.retired[i]) {
        return Err(Error::InvalidOmegaSet(format!(
            "coordinate {} is already retired",
            i + 1
        )));
    }
    if let Some(prev) = &branch.prev_eta {
        if let Some(coord) = strictly_increases(&d.eta, prev) {
            return Err(Error::MonotonicityViolated {
                step: branch.step,
                coord,
            });
        }
    }
    let dg = d_gamma(&d.gamma)?;
    let dg_rat = Rat::from_integer(dg.into());
    let shift = mtuple_of(&d.scaled(&dg_rat));
    let mut retired = branch.retired.clone();
    for (i, e) in d.eta.0.iter().enumerate() {
        if e.is_infinite() {
            retired[i] = true;
        }
    }
    let gens = branch
        .gens
        .iter()
        .map(|g| g.subs_ramify(dg).subs_shift(&shift).retire(&retired))
        .filter(|g| !g.is_zero())
        .collect();
    let old_ram = Rat::from_integer(branch.cum_ram.into());
    let mut acc_terms = branch.acc_terms.clone();
    for &i in &lambda {
        let g = d.gamma[i].as_ref().expect("finite row for active coordinate");
        acc_terms[i].push(SeriesTerm {
            coeff: d.c[i].clone(),
            exp: g.iter().map(|v| v / &old_ram).collect(),
        });
    }
    let mut history = branch.history.clone();
    history.push(TraceStep {
        set: d.clone(),
        d_gamma: dg,
    });
    Ok(Branch {
        gens,
        step: branch.step + 1,
        cum_ram: branch.cum_ram.checked_mul(dg).ok_or(Error::RamificationOverflow)?,
        acc_terms,
        retired,
        history,
        prev_eta: Some(d.eta.scale(&dg_rat)),
    })
}

/// Residual order of a truncated solution: the least order of
/// `f(x, φ(x))` over the generators, `∞` when all vanish.
pub fn verify(gens: &[LPoly], solution: &SeriesSolution, w: &WeightMatrix) -> Val {
    let nx = w.nvars();
    let s = solution.as_polys(nx);
    gens.iter()
        .map(|g| g.eval_series(&s).x_order(w))
        .min()
        .unwrap_or(Val::Infinite)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpandReport {
    pub solutions: Vec<SeriesSolution>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Default)]
struct StepOutcome {
    finished: Vec<(Branch, bool)>,
    children: Vec<Branch>,
    diagnostics: Vec<Diagnostic>,
}

fn advance(branch: &Branch, w: &WeightMatrix, opts: &ExpandOptions) -> Result<StepOutcome> {
    let mut out = StepOutcome::default();
    if branch.step >= opts.max_terms {
        out.finished.push((branch.clone(), branch.zero_solves()));
        return Ok(out);
    }
    let ss = starting_sets(branch, w, opts)?;
    if ss.sets.is_empty() {
        out.diagnostics.push(Diagnostic {
            step: branch.step,
            path: branch.etas(),
            reason: ss.dead_reason(),
            candidates: ss.candidates,
            underdetermined: ss.underdetermined,
            irrational_roots: ss.irrational_roots,
            nonzero_dimensional: ss.nonzero_dimensional,
        });
        return Ok(out);
    }
    if ss.irrational_roots || ss.nonzero_dimensional {
        out.diagnostics.push(Diagnostic {
            step: branch.step,
            path: branch.etas(),
            reason: DeadReason::SolutionsSkipped,
            candidates: ss.candidates,
            underdetermined: ss.underdetermined,
            irrational_roots: ss.irrational_roots,
            nonzero_dimensional: ss.nonzero_dimensional,
        });
    }
    for d in &ss.sets {
        if d.is_all_infinite() {
            let mut done = branch.clone();
            done.history.push(TraceStep {
                set: d.clone(),
                d_gamma: 1,
            });
            out.finished.push((done, true));
        } else {
            out.children.push(recenter(branch, d, w)?);
        }
    }
    Ok(out)
}

/// Expands every branch of the system breadth first.
///
/// A branch ends when `y = 0` solves its current ideal (exact) or after
/// `max_terms` terms. Branches without a starting set are reported in the
/// diagnostics.
pub fn expand(gens: &[LPoly], w: &WeightMatrix, opts: &ExpandOptions) -> Result<ExpandReport> {
    let mut frontier = vec![Branch::new(gens.to_vec())];
    let mut finished: Vec<(Branch, bool)> = Vec::new();
    let mut diagnostics = Vec::new();
    while !frontier.is_empty() {
        if frontier.len() > opts.max_branches {
            return Err(Error::BranchBudgetExceeded(opts.max_branches));
        }
        let outcomes = par::map(opts.exec, &frontier, |b| advance(b, w, opts));
        let mut next = Vec::new();
        for o in outcomes {
            let o = o?;
            finished.extend(o.finished);
            next.extend(o.children);
            diagnostics.extend(o.diagnostics);
        }
        frontier = next;
    }
    let mut solutions: Vec<SeriesSolution> = par::map(opts.exec, &finished, |(b, exact)| {
        let mut sol = SeriesSolution {
            coords: b.acc_terms.clone(),
            ramification: b.cum_ram,
            exact: *exact,
            residual_order: Val::Infinite,
            trace: b.history.clone(),
        };
        sol.residual_order = verify(gens, &sol, w);
        sol
    });
    solutions.sort();
    solutions.dedup();
    diagnostics.sort();
    Ok(ExpandReport {
        solutions,
        diagnostics,
    })
}
