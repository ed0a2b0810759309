//! Greedy sparse recovery: OLS, generalized OLS, OMP, and an exhaustive
//! `l0` oracle for small instances.
//!
//! All solvers take a coefficient matrix `A` (`n × m`) and observations `y`
//! (length `n`) and return a [`RecoveryResult`]. Column indices are 0-based.

mod exhaustive;
mod gols;
mod omp;

pub use exhaustive::{exhaustive_oracle, OracleSolution, EXHAUSTIVE_LIMIT};
pub use gols::{gols_run, ols_run};
pub use omp::omp_run;

use std::cmp::Ordering;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::linalg::{dot, least_squares, norm, DenseMatrix, DenseVector, ProjectionTracker};

/// What to do with a candidate whose projection onto the current orthogonal
/// complement is numerically zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegeneracyPolicy {
    /// Drop the column from the candidate set and move on to the next-best
    /// candidate.
    #[default]
    SkipColumn,
    /// Fail the run with [`Error::DegenerateColumn`].
    Abort,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Columns selected per iteration.
    pub l: usize,
    /// Target sparsity; bounds the iteration count together with `n / l`.
    pub k: usize,
    /// Stop once `‖P⊥ y‖₂ ≤ residual_tol · ‖y‖₂`.
    pub residual_tol: Option<f64>,
    pub degeneracy_policy: DegeneracyPolicy,
}

impl SolverConfig {
    pub fn new(k: usize, l: usize) -> Self {
        Self {
            l,
            k,
            residual_tol: None,
            degeneracy_policy: DegeneracyPolicy::default(),
        }
    }

    pub fn with_residual_tol(mut self, tol: f64) -> Self {
        self.residual_tol = Some(tol);
        self
    }

    pub fn with_policy(mut self, policy: DegeneracyPolicy) -> Self {
        self.degeneracy_policy = policy;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Ran the full iteration bound.
    IterationCap,
    /// Residual dropped below `residual_tol`.
    ResidualTol,
    /// No usable candidates were left.
    Exhausted,
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    /// Selected column indices in selection order.
    pub support: Vec<usize>,
    /// Length-`m` estimate, zero off the support.
    pub x_hat: DenseVector,
    /// `‖y − A x_hat‖₂`.
    pub residual_norm: f64,
    pub iterations: usize,
    /// Residual norm before the first iteration and after each iteration.
    pub residual_trace: Vec<f64>,
    /// Candidates dropped as degenerate.
    pub skipped: Vec<usize>,
    pub stop: StopReason,
    /// Wall-clock time of the solver call.
    pub elapsed: Duration,
}

impl RecoveryResult {
    /// Support in ascending index order.
    pub fn sorted_support(&self) -> Vec<usize> {
        let mut s = self.support.clone();
        s.sort_unstable();
        s
    }
}

/// Normalized projected correlation `|yᵀ D a_j| / ‖D a_j‖₂` of a candidate
/// column against the observations, where `D` is the tracker's current
/// complement projector.
pub fn score_column(y: &DenseVector, t: &ProjectionTracker, a_j: &DenseVector) -> Result<f64> {
    if y.len() != t.dim() || a_j.len() != t.dim() {
        return Err(Error::InvalidDimension(format!(
            "y ({}) and a_j ({}) must match tracker dimension {}",
            y.len(),
            a_j.len(),
            t.dim()
        )));
    }
    score_slice(y.as_slice(), t, a_j.as_slice())
}

pub(crate) fn score_slice(y: &[f64], t: &ProjectionTracker, a: &[f64]) -> Result<f64> {
    let da = t.apply_slice(a);
    let len = norm(&da);
    if len <= t.degeneracy_tol() {
        return Err(Error::DegenerateColumn {
            index: None,
            norm: len,
            tol: t.degeneracy_tol(),
        });
    }
    Ok(dot(y, &da).abs() / len)
}

/// Indices of the `l` largest scores, ordered by descending score and then
/// ascending index.
pub fn select_top_l(scores: &[(usize, f64)], l: usize) -> Result<Vec<usize>> {
    if scores.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut ranked = scores.to_vec();
    ranked.sort_by(rank_order);
    Ok(ranked.into_iter().take(l).map(|(j, _)| j).collect())
}

fn rank_order(a: &(usize, f64), b: &(usize, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

pub(crate) fn check_problem(a: &DenseMatrix, y: &DenseVector, k: usize, l: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidSparsity);
    }
    if a.rows() != y.len() {
        return Err(Error::InvalidDimension(format!(
            "A has {} rows but y has length {}",
            a.rows(),
            y.len()
        )));
    }
    if k > a.cols() {
        return Err(Error::InvalidDimension(format!(
            "sparsity {k} exceeds column count {}",
            a.cols()
        )));
    }
    if l == 0 || l > a.rows() {
        return Err(Error::InvalidDimension(format!(
            "columns per iteration must lie in 1..={}, got {l}",
            a.rows()
        )));
    }
    Ok(())
}

/// Least-squares fit on `support`, scattered into a length-`m` estimate.
pub(crate) fn fit_support(
    a: &DenseMatrix,
    y: &DenseVector,
    support: &[usize],
) -> Result<(DenseVector, f64)> {
    let m = a.cols();
    if support.is_empty() {
        return Ok((DenseVector::zeros(m), y.norm()));
    }
    let coef = least_squares(&a.select_columns(support)?, y)?;
    let mut x = vec![0.0; m];
    for (&j, &c) in support.iter().zip(coef.as_slice()) {
        x[j] = c;
    }
    let x_hat = DenseVector::new(x)?;
    let residual = y.sub(&a.mul_vec(&x_hat)?)?.norm();
    Ok((x_hat, residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DenseVector {
        DenseVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn aligned_and_orthogonal_scores() {
        let t = ProjectionTracker::new(3).unwrap();
        let e0 = v(&[1.0, 0.0, 0.0]);
        assert_eq!(score_column(&e0, &t, &e0).unwrap(), 1.0);
        let e1 = v(&[0.0, 1.0, 0.0]);
        assert_eq!(score_column(&e0, &t, &e1).unwrap(), 0.0);
    }

    #[test]
    fn score_of_absorbed_column_is_degenerate() {
        let mut t = ProjectionTracker::new(3).unwrap();
        let a = v(&[1.0, 1.0, 0.0]);
        t.absorb(&a).unwrap();
        assert!(matches!(
            score_column(&v(&[1.0, 0.0, 0.0]), &t, &a),
            Err(Error::DegenerateColumn { .. })
        ));
    }

    #[test]
    fn top_l_breaks_ties_toward_smaller_index() {
        let scores = [(3, 0.9), (7, 0.9), (1, 0.2)];
        assert_eq!(select_top_l(&scores, 1).unwrap(), vec![3]);
        assert_eq!(select_top_l(&scores, 2).unwrap(), vec![3, 7]);
        assert_eq!(select_top_l(&scores, 10).unwrap(), vec![3, 7, 1]);
        assert!(matches!(select_top_l(&[], 2), Err(Error::EmptyCandidates)));
    }
}
