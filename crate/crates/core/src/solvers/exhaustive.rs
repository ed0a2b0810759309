use itertools::Itertools;

use super::fit_support;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DenseVector};

/// Largest number of `k`-subsets [`exhaustive_oracle`] will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone)]
pub struct OracleSolution {
    /// Ascending column indices.
    pub support: Vec<usize>,
    pub x_hat: DenseVector,
    pub residual_norm: f64,
}

/// Solves `min ‖y − A x‖₂ s.t. ‖x‖₀ ≤ k` by enumerating every `k`-subset of
/// columns. Ties go to the lexicographically smallest support. Subsets whose
/// columns are numerically dependent are skipped.
pub fn exhaustive_oracle(a: &DenseMatrix, y: &DenseVector, k: usize) -> Result<OracleSolution> {
    if k == 0 {
        return Err(Error::InvalidSparsity);
    }
    let (n, m) = (a.rows(), a.cols());
    if a.rows() != y.len() {
        return Err(Error::InvalidDimension(format!(
            "A has {n} rows but y has length {}",
            y.len()
        )));
    }
    if k > m || k > n {
        return Err(Error::InvalidDimension(format!(
            "sparsity {k} must not exceed min(n, m) = {}",
            n.min(m)
        )));
    }
    let subsets = binomial(m as u128, k as u128, EXHAUSTIVE_LIMIT);
    if subsets > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            subsets,
            limit: EXHAUSTIVE_LIMIT,
        });
    }

    let mut best: Option<OracleSolution> = None;
    let mut last_err = None;
    for support in (0..m).combinations(k) {
        match fit_support(a, y, &support) {
            Ok((x_hat, residual_norm)) => {
                if best
                    .as_ref()
                    .is_none_or(|b| residual_norm < b.residual_norm)
                {
                    best = Some(OracleSolution {
                        support,
                        x_hat,
                        residual_norm,
                    });
                }
            }
            Err(e @ Error::RankDeficient { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::EmptyCandidates))
}

/// `C(m, k)`, saturating just above `cap`.
fn binomial(m: u128, k: u128, cap: u128) -> u128 {
    let k = k.min(m - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (m - i) / (i + 1);
        if c > cap {
            return cap + 1;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2, u128::MAX), 15);
        assert_eq!(binomial(28, 14, u128::MAX), 40_116_600);
        assert_eq!(binomial(28, 14, 1000), 1001);
        assert_eq!(binomial(5, 5, 10), 1);
    }

    #[test]
    fn guard_rejects_large_searches() {
        let a = DenseMatrix::from_row_major(30, 40, vec![1.0; 1200]).unwrap();
        let y = DenseVector::zeros(30);
        assert!(matches!(
            exhaustive_oracle(&a, &y, 10),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            exhaustive_oracle(&a, &y, 0),
            Err(Error::InvalidSparsity)
        ));
    }

    #[test]
    fn full_support_is_full_least_squares() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let y = DenseVector::new(vec![0.0, 2.0, 1.0]).unwrap();
        let sol = exhaustive_oracle(&a, &y, 2).unwrap();
        let (_, full) = fit_support(&a, &y, &[0, 1]).unwrap();
        assert_eq!(sol.support, vec![0, 1]);
        assert!((sol.residual_norm - full).abs() < 1e-14);
    }
}
