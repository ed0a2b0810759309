//! Greedy sparse recovery by orthogonal least squares.
//!
//! Given `y = A x + e` with `A` an `n × m` matrix (`n < m`) and `x` a
//! `k`-sparse vector, the solvers here estimate the support of `x` one or
//! several columns at a time:
//!
//! * [`solvers::ols_run`]: orthogonal least squares, one column per step,
//!   choosing the column that minimizes the next least-squares residual.
//! * [`solvers::gols_run`]: generalized OLS, `L` columns per step, driven by
//!   an explicit complement projector updated through rank-one downdates
//!   ([`linalg::ProjectionTracker`]).
//! * [`solvers::omp_run`]: orthogonal matching pursuit baseline.
//! * [`solvers::exhaustive_oracle`]: brute-force `l0` search for tiny
//!   instances.
//!
//! [`ensembles`] draws the seeded Gaussian/Bernoulli test problems and
//! [`metrics`] scores estimates against the ground truth.
//!
//! ```
//! use gols::ensembles::{make_problem, MatrixEnsemble, MatrixKind, SignalDist, SignalEnsemble};
//! use gols::solvers::{gols_run, SolverConfig};
//!
//! let me = MatrixEnsemble::new(MatrixKind::Gaussian, 64, 128);
//! let se = SignalEnsemble::new(SignalDist::GaussianUnit, 128, 8);
//! let p = make_problem(&me, &se, 0.0, 42).unwrap();
//!
//! let res = gols_run(&p.a, &p.y, &SolverConfig::new(8, 2)).unwrap();
//! assert!(p.support_true.iter().all(|j| res.support.contains(j)));
//! ```

pub mod ensembles;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod solvers;

pub use error::{Error, Result};

/// Formats a real with 17 significant digits, enough to read back the
/// identical `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/projection.md")]
    mod projection {}
    #[doc = include_str!("../../../book/src/selection.md")]
    mod selection {}
    #[doc = include_str!("../../../book/src/gols.md")]
    mod gols {}
    #[doc = include_str!("../../../book/src/ensembles.md")]
    mod ensembles {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
}
