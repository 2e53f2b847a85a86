use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight matrix has rank {rank}, needs rank {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("value is not in the image of the weight matrix")]
    NotInImage,

    #[error("Groebner basis computation exceeded {0} S-pair reductions")]
    BudgetExceeded(usize),

    #[error("branch frontier exceeded the cap of {0} live branches")]
    BranchBudgetExceeded(usize),

    #[error("invalid omega-set: {0}")]
    InvalidOmegaSet(String),

    #[error("eta does not increase strictly on coordinate {coord} at step {step}")]
    MonotonicityViolated { step: usize, coord: usize },

    #[error("cumulative ramification index overflowed")]
    RamificationOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
