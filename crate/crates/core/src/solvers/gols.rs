use std::time::Instant;

use super::{
    check_problem, fit_support, rank_order, score_slice, DegeneracyPolicy, RecoveryResult,
    SolverConfig, StopReason,
};
use crate::error::{Error, Result};
use crate::linalg::{norm, DenseMatrix, DenseVector, ProjectionTracker};

/// Generalized orthogonal least squares.
///
/// Each iteration scores every remaining column by
/// `|yᵀ D a_j| / ‖D a_j‖₂`, selects the `l` best, and absorbs them into the
/// complement projector `D` one rank-one downdate at a time, in score order.
/// The loop runs at most `min(k, ⌊n/l⌋)` times. The estimate is the least
/// squares fit of `y` on all selected columns, so the returned support can
/// hold up to `l · k` indices.
///
/// ```
/// use gols::linalg::{DenseMatrix, DenseVector};
/// use gols::solvers::{gols_run, SolverConfig};
///
/// let a = DenseMatrix::from_rows(&[
///     vec![1.0, 0.0, 0.6],
///     vec![0.0, 1.0, 0.8],
/// ]).unwrap();
/// let y = DenseVector::new(vec![0.6, 0.8]).unwrap();
/// let res = gols_run(&a, &y, &SolverConfig::new(1, 1)).unwrap();
/// assert_eq!(res.support, vec![2]);
/// assert!(res.residual_norm < 1e-12);
/// ```
pub fn gols_run(a: &DenseMatrix, y: &DenseVector, cfg: &SolverConfig) -> Result<RecoveryResult> {
    let start = Instant::now();
    check_problem(a, y, cfg.k, cfg.l)?;
    let (n, m) = (a.rows(), a.cols());

    let columns = a.transpose();
    let column = |j: usize| columns.row(j);
    let ys = y.as_slice();
    let y_norm = y.norm();

    let mut tracker = ProjectionTracker::new(n)?;
    let mut candidates: Vec<usize> = (0..m).collect();
    let mut support = Vec::with_capacity(cfg.k * cfg.l);
    let mut skipped = Vec::new();
    let mut trace = vec![y_norm];
    let mut stop = StopReason::IterationCap;
    let mut iterations = 0;

    let max_iterations = cfg.k.min(n / cfg.l);
    'outer: for _ in 0..max_iterations {
        if let Some(tol) = cfg.residual_tol {
            if *trace.last().unwrap() <= tol * y_norm {
                stop = StopReason::ResidualTol;
                break;
            }
        }

        let mut scores = Vec::with_capacity(candidates.len());
        let mut degenerate = Vec::new();
        for &j in &candidates {
            match score_slice(ys, &tracker, column(j)) {
                Ok(s) => scores.push((j, s)),
                Err(Error::DegenerateColumn { norm, tol, .. }) => {
                    if cfg.degeneracy_policy == DegeneracyPolicy::Abort {
                        return Err(Error::DegenerateColumn {
                            index: Some(j),
                            norm,
                            tol,
                        });
                    }
                    degenerate.push(j);
                }
                Err(e) => return Err(e),
            }
        }
        if !degenerate.is_empty() {
            candidates.retain(|j| !degenerate.contains(j));
            skipped.extend(degenerate);
        }
        scores.sort_by(rank_order);

        let mut taken = 0;
        for &(j, _) in &scores {
            if taken == cfg.l {
                break;
            }
            match tracker.absorb_slice(column(j)) {
                Ok(()) => {
                    support.push(j);
                    taken += 1;
                }
                Err(Error::DegenerateColumn { norm, tol, .. }) => {
                    if cfg.degeneracy_policy == DegeneracyPolicy::Abort {
                        return Err(Error::DegenerateColumn {
                            index: Some(j),
                            norm,
                            tol,
                        });
                    }
                    skipped.push(j);
                }
                Err(e) => return Err(e),
            }
            candidates.retain(|&c| c != j);
        }
        if taken == 0 {
            stop = StopReason::Exhausted;
            break 'outer;
        }
        tracker.stabilize();
        iterations += 1;
        trace.push(norm(&tracker.apply_slice(ys)));
    }

    let (x_hat, residual_norm) = fit_support(a, y, &support)?;
    let result = RecoveryResult {
        support,
        x_hat,
        residual_norm,
        iterations,
        residual_trace: trace,
        skipped,
        stop,
        elapsed: start.elapsed(),
    };
    if stop == StopReason::Exhausted {
        return Err(Error::EarlyStop {
            partial: Box::new(result),
        });
    }
    Ok(result)
}

/// Orthogonal least squares: one column per iteration, `min(k, n)`
/// iterations. Identical to [`gols_run`] with `l = 1`.
pub fn ols_run(a: &DenseMatrix, y: &DenseVector, k: usize) -> Result<RecoveryResult> {
    gols_run(a, y, &SolverConfig::new(k, 1))
}
