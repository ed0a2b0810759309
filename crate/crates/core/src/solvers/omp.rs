use std::time::Instant;

use super::{check_problem, fit_support, select_top_l, RecoveryResult, StopReason};
use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix, DenseVector};

/// Orthogonal matching pursuit baseline.
///
/// Each iteration picks the remaining column with the largest `|a_jᵀ r|`
/// against the current residual `r`, then refits `y` on the whole support by
/// least squares. Runs `min(k, n)` iterations.
pub fn omp_run(a: &DenseMatrix, y: &DenseVector, k: usize) -> Result<RecoveryResult> {
    let start = Instant::now();
    check_problem(a, y, k, 1)?;
    let (n, m) = (a.rows(), a.cols());
    let columns = a.transpose();

    let mut candidates: Vec<usize> = (0..m).collect();
    let mut support = Vec::with_capacity(k);
    let mut residual = y.clone();
    let mut x_hat = DenseVector::zeros(m);
    let mut residual_norm = y.norm();
    let mut trace = vec![residual_norm];

    for _ in 0..k.min(n) {
        let scores: Vec<(usize, f64)> = candidates
            .iter()
            .map(|&j| (j, dot(columns.row(j), residual.as_slice()).abs()))
            .collect();
        let best = match select_top_l(&scores, 1) {
            Ok(b) => b[0],
            Err(Error::EmptyCandidates) => break,
            Err(e) => return Err(e),
        };
        support.push(best);
        candidates.retain(|&c| c != best);

        let (x, r_norm) = fit_support(a, y, &support)?;
        residual = y.sub(&a.mul_vec(&x)?)?;
        x_hat = x;
        residual_norm = r_norm;
        trace.push(residual_norm);
    }

    Ok(RecoveryResult {
        iterations: support.len(),
        support,
        x_hat,
        residual_norm,
        residual_trace: trace,
        skipped: Vec::new(),
        stop: StopReason::IterationCap,
        elapsed: start.elapsed(),
    })
}
