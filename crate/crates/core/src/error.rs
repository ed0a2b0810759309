use thiserror::Error;

use crate::solvers::RecoveryResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    /// The column lies (numerically) in the span of the columns already
    /// absorbed by the projection tracker.
    #[error("degenerate column{}: projected norm {norm:e} is below tolerance {tol:e}", fmt_index(.index))]
    DegenerateColumn {
        index: Option<usize>,
        norm: f64,
        tol: f64,
    },

    #[error("matrix is rank deficient: |r_jj| = {smallest:e} vs max {largest:e}")]
    RankDeficient { smallest: f64, largest: f64 },

    #[error("candidate list is empty")]
    EmptyCandidates,

    /// Every remaining candidate was degenerate before the iteration bound
    /// was reached. The partial result covers the iterations completed so far.
    #[error("solver stopped early after {} iterations: no usable candidates", .partial.iterations)]
    EarlyStop { partial: Box<RecoveryResult> },

    #[error("exhaustive search over {subsets} subsets exceeds the limit of {limit}")]
    TooLarge { subsets: u128, limit: u128 },

    #[error("sparsity must be at least 1")]
    InvalidSparsity,

    #[error("cannot aggregate an empty outcome list")]
    EmptyAggregate,

    #[error("outcomes belong to different grid cells: {0}")]
    MixedCells(String),

    #[error("malformed fixture: {0}")]
    Fixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_index(index: &Option<usize>) -> String {
    match index {
        Some(i) => format!(" {i}"),
        None => String::new(),
    }
}
