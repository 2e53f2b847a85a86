//! Multivariate Puiseux series solutions of polynomial systems.
//!
//! Given generators `f_1, …, f_k` in `K[x_1^±*, …, x_N^±*, y_1, …, y_M]` and
//! a generic weight on the `x` variables, [`expansion::expand`] computes,
//! term by term, the M-tuples of Puiseux series `y = φ(x)` annihilating
//! every generator. Each term comes from a weight `η` on the tropical
//! prevariety of the current ideal and a rational torus solution of its
//! initial system; the ideal is then ramified and recentered.
//!
//! Coefficients are exact rationals throughout. Branches whose leading
//! coefficients are irrational are reported, not expanded.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod numeric;
pub mod par;
pub mod poly;
pub mod solver;
pub mod tropical;

pub use error::{Error, Result};
pub use expansion::{
    expand, verify, ExpandOptions, ExpandReport, OmegaSet, SeriesSolution, SeriesTerm,
};
pub use numeric::{Rat, Val, WeightMatrix};
pub use par::Exec;
pub use poly::{EtaVec, LPoly, Term};
