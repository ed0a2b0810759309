use super::{dot, norm, DenseMatrix, DenseVector};
use crate::error::{Error, Result};

/// Bound on `‖D² − D‖_F` above which [`ProjectionTracker::stabilize`]
/// re-symmetrizes the projector.
pub(crate) const IDEMPOTENCY_TOL: f64 = 1e-9;

/// Orthogonal-complement projector `D = I − B B†` onto the span of the
/// columns absorbed so far, kept as an explicit dense `n × n` matrix.
///
/// Starts at `D = I`. Each [`absorb`](Self::absorb) of a column `a` applies
/// the rank-one downdate
///
/// ```text
/// d = D a / ‖D a‖₂,    D ← D − d dᵀ
/// ```
///
/// which removes the direction of `a` that is not yet spanned. `D` stays
/// symmetric and idempotent with `trace(D) = n − absorbed`.
#[derive(Debug, Clone)]
pub struct ProjectionTracker {
    d: DenseMatrix,
    absorbed: usize,
    degeneracy_tol: f64,
}

impl ProjectionTracker {
    /// Fresh tracker with `D = I_n` and the default degeneracy tolerance
    /// `1e-10 · √n`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tolerance(n, Self::default_tolerance(n))
    }

    pub fn with_tolerance(n: usize, degeneracy_tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(
                "projection tracker needs n >= 1".into(),
            ));
        }
        if !(degeneracy_tol > 0.0 && degeneracy_tol.is_finite()) {
            return Err(Error::InvalidDimension(format!(
                "degeneracy tolerance must be positive, got {degeneracy_tol}"
            )));
        }
        Ok(Self {
            d: DenseMatrix::identity(n)?,
            absorbed: 0,
            degeneracy_tol,
        })
    }

    pub fn default_tolerance(n: usize) -> f64 {
        1e-10 * (n as f64).sqrt()
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn absorbed(&self) -> usize {
        self.absorbed
    }

    pub fn degeneracy_tol(&self) -> f64 {
        self.degeneracy_tol
    }

    /// The current projector `D`.
    pub fn matrix(&self) -> &DenseMatrix {
        &self.d
    }

    /// Returns `D v`.
    pub fn apply(&self, v: &DenseVector) -> Result<DenseVector> {
        self.check_len(v.len())?;
        Ok(DenseVector::from_vec_unchecked(
            self.apply_slice(v.as_slice()),
        ))
    }

    pub(crate) fn apply_slice(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|i| dot(self.d.row(i), v)).collect()
    }

    /// Absorbs column `a`: `D ← D − d dᵀ` with `d = D a / ‖D a‖₂`.
    ///
    /// Fails with [`Error::DegenerateColumn`] when `‖D a‖₂` does not exceed
    /// the degeneracy tolerance; the tracker is left unchanged in that case.
    pub fn absorb(&mut self, a: &DenseVector) -> Result<()> {
        self.check_len(a.len())?;
        self.absorb_slice(a.as_slice()).map_err(|e| match e {
            Error::DegenerateColumn { norm, tol, .. } => Error::DegenerateColumn {
                index: None,
                norm,
                tol,
            },
            other => other,
        })
    }

    pub(crate) fn absorb_slice(&mut self, a: &[f64]) -> Result<()> {
        let mut d = self.apply_slice(a);
        let len = norm(&d);
        if len <= self.degeneracy_tol {
            return Err(Error::DegenerateColumn {
                index: None,
                norm: len,
                tol: self.degeneracy_tol,
            });
        }
        d.iter_mut().for_each(|v| *v /= len);
        let n = self.dim();
        for (i, &di) in d.iter().enumerate() {
            for (j, &dj) in d.iter().enumerate() {
                let v = self.d.get(i, j) - di * dj;
                self.d.set(i, j, v);
            }
        }
        debug_assert!(n > self.absorbed);
        self.absorbed += 1;
        Ok(())
    }

    /// `‖D² − D‖_F`. Uses the upper triangle of `D²` when `D` is exactly
    /// symmetric, which the downdate preserves.
    pub fn idempotency_defect(&self) -> f64 {
        let n = self.dim();
        let symmetric = (0..n).all(|i| (i + 1..n).all(|j| self.d.get(i, j) == self.d.get(j, i)));
        let mut sum = 0.0;
        if symmetric {
            for i in 0..n {
                let ri = self.d.row(i);
                for j in i..n {
                    let r = dot(ri, self.d.row(j)) - self.d.get(i, j);
                    sum += if i == j { r * r } else { 2.0 * r * r };
                }
            }
        } else {
            let cols = self.d.transpose();
            for i in 0..n {
                for j in 0..n {
                    let r = dot(self.d.row(i), cols.row(j)) - self.d.get(i, j);
                    sum += r * r;
                }
            }
        }
        sum.sqrt()
    }

    /// Re-symmetrizes `D ← (D + Dᵀ)/2` when the idempotency defect exceeds
    /// `1e-9`. Returns whether a correction was applied.
    pub fn stabilize(&mut self) -> bool {
        if self.idempotency_defect() <= IDEMPOTENCY_TOL {
            return false;
        }
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (self.d.get(i, j) + self.d.get(j, i));
                self.d.set(i, j, avg);
                self.d.set(j, i, avg);
            }
        }
        true
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::InvalidDimension(format!(
                "vector of length {len} for tracker of dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DenseVector {
        DenseVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn starts_at_identity() {
        let t = ProjectionTracker::new(3).unwrap();
        assert_eq!(t.matrix(), &DenseMatrix::identity(3).unwrap());
        assert_eq!(t.matrix().trace(), 3.0);
        assert_eq!(t.absorbed(), 0);

        let t = ProjectionTracker::new(1).unwrap();
        assert_eq!(t.matrix().as_slice(), &[1.0]);

        let t = ProjectionTracker::new(64).unwrap();
        assert_eq!(t.matrix().trace(), 64.0);
        assert_eq!(t.absorbed(), 0);
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(matches!(
            ProjectionTracker::new(0),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn axis_projection() {
        let mut t = ProjectionTracker::new(2).unwrap();
        t.absorb(&v(&[1.0, 0.0])).unwrap();
        assert_eq!(t.matrix().as_slice(), &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(t.absorbed(), 1);
        assert_eq!(t.apply(&v(&[3.0, 4.0])).unwrap().as_slice(), &[0.0, 4.0]);
    }

    #[test]
    fn repeated_column_is_degenerate() {
        let mut t = ProjectionTracker::new(2).unwrap();
        t.absorb(&v(&[1.0, 0.0])).unwrap();
        let before = t.matrix().clone();
        assert!(matches!(
            t.absorb(&v(&[1.0, 0.0])),
            Err(Error::DegenerateColumn { .. })
        ));
        assert_eq!(t.matrix(), &before);
        assert_eq!(t.absorbed(), 1);
    }

    #[test]
    fn fresh_tracker_applies_identity() {
        let t = ProjectionTracker::new(2).unwrap();
        assert_eq!(t.apply(&v(&[2.0, -1.0])).unwrap().as_slice(), &[2.0, -1.0]);
        assert!(matches!(
            t.apply(&v(&[1.0])),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn stabilize_is_noop_on_clean_projector() {
        let mut t = ProjectionTracker::new(3).unwrap();
        t.absorb(&v(&[1.0, 2.0, 2.0])).unwrap();
        assert!(t.idempotency_defect() < 1e-12);
        assert!(!t.stabilize());
    }

    #[test]
    fn stabilize_symmetrizes_drifted_projector() {
        let mut t = ProjectionTracker::new(2).unwrap();
        t.d.set(0, 1, 1e-6);
        assert!(t.stabilize());
        assert_eq!(t.matrix().get(0, 1), t.matrix().get(1, 0));
    }
}
