//! Recovery metrics: component-level and strict exact recovery, MSE, timing,
//! and their aggregation over trials.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::DenseVector;

/// `|S_est ∩ S_true| / k`.
pub fn err_components(est: &[usize], truth: &[usize], k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidSparsity);
    }
    let truth: HashSet<usize> = truth.iter().copied().collect();
    let est: HashSet<usize> = est.iter().copied().collect();
    Ok(est.intersection(&truth).count() as f64 / k as f64)
}

/// The `k` indices of `est` with the largest `|x_hat|`, ties to the smaller
/// index.
pub fn top_k_support(est: &[usize], x_hat: &DenseVector, k: usize) -> Vec<usize> {
    let mut ranked: Vec<usize> = est.to_vec();
    ranked.sort_by(|&a, &b| x_hat[b].abs().total_cmp(&x_hat[a].abs()).then(a.cmp(&b)));
    ranked.truncate(k);
    ranked
}

/// `true` iff every true index is among the top-`k` magnitudes of `x_hat`
/// restricted to `est`.
pub fn exact_support(est: &[usize], truth: &[usize], x_hat: &DenseVector, k: usize) -> bool {
    let top = top_k_support(est, x_hat, k);
    truth.iter().all(|j| top.contains(j))
}

/// `x_hat` with everything outside its `k` largest support entries zeroed.
pub fn truncate_top_k(est: &[usize], x_hat: &DenseVector, k: usize) -> DenseVector {
    let mut out = DenseVector::zeros(x_hat.len()).into_vec();
    for j in top_k_support(est, x_hat, k) {
        out[j] = x_hat[j];
    }
    DenseVector::from_vec_unchecked(out)
}

/// `‖x_true − x_hat‖₂² / m`.
pub fn mse(x_true: &DenseVector, x_hat: &DenseVector) -> Result<f64> {
    let diff = x_true.sub(x_hat)?;
    if diff.is_empty() {
        return Err(Error::InvalidDimension("empty signal".into()));
    }
    Ok(diff.dot(&diff) / diff.len() as f64)
}

/// One solver run on one problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub algorithm: String,
    pub k: usize,
    pub l: usize,
    pub trial: usize,
    pub component_recovery: f64,
    pub exact_support: bool,
    pub mse_full: f64,
    pub mse_topk: f64,
    pub elapsed_s: f64,
}

impl TrialOutcome {
    /// Scores an estimate against the ground truth.
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        algorithm: &str,
        l: usize,
        trial: usize,
        support_est: &[usize],
        x_hat: &DenseVector,
        support_true: &[usize],
        x_true: &DenseVector,
        elapsed_s: f64,
    ) -> Result<Self> {
        let k = support_true.len();
        Ok(Self {
            algorithm: algorithm.to_string(),
            k,
            l,
            trial,
            component_recovery: err_components(support_est, support_true, k)?,
            exact_support: exact_support(support_est, support_true, x_hat, k),
            mse_full: mse(x_true, x_hat)?,
            mse_topk: mse(x_true, &truncate_top_k(support_est, x_hat, k))?,
            elapsed_s,
        })
    }
}

/// Aggregate of one `(algorithm, k, L)` grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub algorithm: String,
    pub k: usize,
    pub l: usize,
    pub trials: usize,
    /// Mean component recovery.
    pub err: f64,
    /// Sample standard deviation of component recovery.
    pub err_stddev: f64,
    /// Fraction of trials with exact support recovery.
    pub exact_rate: f64,
    pub mse: f64,
    pub mse_topk: f64,
    pub time_mean_s: f64,
    pub time_stddev_s: f64,
}

impl MetricsReport {
    /// Standard error of [`err`](Self::err).
    pub fn err_stderr(&self) -> f64 {
        self.err_stddev / (self.trials as f64).sqrt()
    }
}

/// Means and sample standard deviations over one grid cell. Outcomes are
/// ordered by trial index first, so the result does not depend on the order
/// they arrive in.
pub fn aggregate(outcomes: &[TrialOutcome]) -> Result<MetricsReport> {
    let first = outcomes.first().ok_or(Error::EmptyAggregate)?;
    if let Some(o) = outcomes
        .iter()
        .find(|o| o.algorithm != first.algorithm || o.k != first.k || o.l != first.l)
    {
        return Err(Error::MixedCells(format!(
            "({}, k={}, L={}) vs ({}, k={}, L={})",
            first.algorithm, first.k, first.l, o.algorithm, o.k, o.l
        )));
    }
    let mut sorted: Vec<&TrialOutcome> = outcomes.iter().collect();
    sorted.sort_by(|a, b| {
        a.trial
            .cmp(&b.trial)
            .then(a.component_recovery.total_cmp(&b.component_recovery))
            .then(a.mse_full.total_cmp(&b.mse_full))
            .then(a.elapsed_s.total_cmp(&b.elapsed_s))
    });

    let (err, err_stddev) = mean_std(sorted.iter().map(|o| o.component_recovery));
    let (time_mean_s, time_stddev_s) = mean_std(sorted.iter().map(|o| o.elapsed_s));
    let exact = sorted.iter().filter(|o| o.exact_support).count();
    Ok(MetricsReport {
        algorithm: first.algorithm.clone(),
        k: first.k,
        l: first.l,
        trials: sorted.len(),
        err,
        err_stddev,
        exact_rate: exact as f64 / sorted.len() as f64,
        mse: mean_std(sorted.iter().map(|o| o.mse_full)).0,
        mse_topk: mean_std(sorted.iter().map(|o| o.mse_topk)).0,
        time_mean_s,
        time_stddev_s,
    })
}

/// Mean and sample (n − 1) standard deviation; zero deviation for one value.
fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let (count, sum) = values
        .clone()
        .fold((0usize, 0.0), |(c, s), v| (c + 1, s + v));
    let mean = sum / count as f64;
    if count < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (count - 1) as f64).sqrt())
}
