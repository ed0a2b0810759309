use super::{dot, DenseMatrix, DenseVector};
use crate::error::{Error, Result};

/// Relative threshold on the diagonal of `R`: a factor with
/// `min |r_jj| < RANK_TOL · max |r_jj|` is treated as rank deficient.
pub const RANK_TOL: f64 = 1e-10;

/// Householder QR factorization of a tall matrix (`rows ≥ cols`).
///
/// Stored compactly: column `j` holds the Householder vector `v_j` below the
/// diagonal (with implicit unit leading entry) and `R` on and above it.
#[derive(Debug, Clone)]
pub struct HouseholderQr {
    rows: usize,
    cols: usize,
    // column-major
    qr: Vec<f64>,
    tau: Vec<f64>,
    r_diag: Vec<f64>,
}

impl HouseholderQr {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let (rows, cols) = (a.rows(), a.cols());
        if rows < cols {
            return Err(Error::InvalidDimension(format!(
                "least squares needs rows >= cols, got {rows}x{cols}"
            )));
        }
        let mut qr = a.transpose().as_slice().to_vec();
        let mut tau = vec![0.0; cols];
        let mut r_diag = vec![0.0; cols];

        for j in 0..cols {
            let (done, rest) = qr.split_at_mut((j + 1) * rows);
            let col = &mut done[j * rows..];
            let x = &mut col[j..];
            let alpha = x[0];
            let tail_sq = dot(&x[1..], &x[1..]);
            let norm_x = (alpha * alpha + tail_sq).sqrt();
            if norm_x == 0.0 {
                // zero column: identity reflector, r_jj = 0 trips the rank check
                tau[j] = 0.0;
                r_diag[j] = 0.0;
                continue;
            }
            let beta = if alpha >= 0.0 { -norm_x } else { norm_x };
            let v0 = alpha - beta;
            x[1..].iter_mut().for_each(|v| *v /= v0);
            x[0] = beta;
            tau[j] = (beta - alpha) / beta;
            r_diag[j] = beta;

            // apply H_j = I - tau v vᵀ to the remaining columns
            let v_tail = &x[1..];
            for c in rest.chunks_exact_mut(rows) {
                let y = &mut c[j..];
                let s = tau[j] * (y[0] + dot(v_tail, &y[1..]));
                y[0] -= s;
                y[1..]
                    .iter_mut()
                    .zip(v_tail)
                    .for_each(|(yi, vi)| *yi -= s * vi);
            }
        }

        let largest = r_diag.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
        let smallest = r_diag.iter().fold(f64::INFINITY, |m, r| m.min(r.abs()));
        if largest == 0.0 || smallest < RANK_TOL * largest {
            return Err(Error::RankDeficient { smallest, largest });
        }
        Ok(Self {
            rows,
            cols,
            qr,
            tau,
            r_diag,
        })
    }

    pub fn r_diagonal(&self) -> &[f64] {
        &self.r_diag
    }

    /// Returns `arg min_x ‖y − A x‖₂`.
    pub fn solve(&self, y: &DenseVector) -> Result<DenseVector> {
        if y.len() != self.rows {
            return Err(Error::InvalidDimension(format!(
                "right-hand side of length {} for {} rows",
                y.len(),
                self.rows
            )));
        }
        let rows = self.rows;
        let mut b = y.as_slice().to_vec();
        // b ← Qᵀ y
        for j in 0..self.cols {
            let col = &self.qr[j * rows..(j + 1) * rows];
            let v_tail = &col[j + 1..];
            let s = self.tau[j] * (b[j] + dot(v_tail, &b[j + 1..]));
            b[j] -= s;
            b[j + 1..]
                .iter_mut()
                .zip(v_tail)
                .for_each(|(bi, vi)| *bi -= s * vi);
        }
        // back substitution on R
        let mut x = vec![0.0; self.cols];
        for i in (0..self.cols).rev() {
            let mut s = b[i];
            for (k, xk) in x.iter().enumerate().skip(i + 1) {
                s -= self.qr[k * rows + i] * xk;
            }
            x[i] = s / self.qr[i * rows + i];
        }
        DenseVector::new(x)
    }
}

/// Least-squares solution of `A_S x ≈ y` through Householder QR.
pub fn least_squares(a: &DenseMatrix, y: &DenseVector) -> Result<DenseVector> {
    HouseholderQr::new(a)?.solve(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v(x: &[f64]) -> DenseVector {
        DenseVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn identity_system() {
        let x = least_squares(&DenseMatrix::identity(3).unwrap(), &v(&[1.0, 2.0, 3.0])).unwrap();
        for (a, b) in x.as_slice().iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_column_gives_mean() {
        let a = DenseMatrix::from_row_major(2, 1, vec![1.0, 1.0]).unwrap();
        let x = least_squares(&a, &v(&[0.0, 2.0])).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rank_deficient_is_reported() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]]).unwrap();
        assert!(matches!(
            least_squares(&a, &v(&[1.0, 1.0, 1.0])),
            Err(Error::RankDeficient { .. })
        ));
        let z = DenseMatrix::from_row_major(2, 1, vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            HouseholderQr::new(&z),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn wide_matrix_is_rejected() {
        let a = DenseMatrix::from_row_major(1, 2, vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            HouseholderQr::new(&a),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn residual_is_orthogonal_to_columns() {
        let a = DenseMatrix::from_rows(&[
            vec![1.0, 0.5],
            vec![-2.0, 1.0],
            vec![0.3, 3.0],
            vec![1.0, -1.0],
        ])
        .unwrap();
        let y = v(&[1.0, 2.0, -1.0, 0.5]);
        let x = least_squares(&a, &y).unwrap();
        let r = y.sub(&a.mul_vec(&x).unwrap()).unwrap();
        for j in 0..2 {
            assert!(a.column(j).dot(&r).abs() <= 1e-8 * y.norm());
        }
    }
}
