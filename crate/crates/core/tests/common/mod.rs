#![allow(dead_code)]

use gols::linalg::{DenseMatrix, DenseVector, ProjectionTracker};
use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn randn_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| StandardNormal.sample(rng))
        .collect();
    DenseMatrix::from_row_major(rows, cols, data).unwrap()
}

pub fn randn_vector(rng: &mut StdRng, len: usize) -> DenseVector {
    DenseVector::new((0..len).map(|_| StandardNormal.sample(rng)).collect()).unwrap()
}

pub fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

pub fn to_na_vec(v: &DenseVector) -> DVector<f64> {
    DVector::from_column_slice(v.as_slice())
}

/// `B† = (BᵀB)⁻¹Bᵀ` through the normal equations.
pub fn pinv_normal(b: &DMatrix<f64>) -> DMatrix<f64> {
    let gram = b.transpose() * b;
    gram.try_inverse().expect("full column rank") * b.transpose()
}

/// `I − B B†` for the listed columns of `a`.
pub fn complement_oracle(a: &DenseMatrix, cols: &[usize]) -> DMatrix<f64> {
    let n = a.rows();
    if cols.is_empty() {
        return DMatrix::identity(n, n);
    }
    let b = to_na(&a.select_columns(cols).unwrap());
    DMatrix::identity(n, n) - &b * pinv_normal(&b)
}

/// `‖(I − A_S A_S†) y‖₂` through the pseudo-inverse oracle.
pub fn residual_oracle(a: &DenseMatrix, cols: &[usize], y: &DenseVector) -> f64 {
    (complement_oracle(a, cols) * to_na_vec(y)).norm()
}

pub fn tracker_from(a: &DenseMatrix, cols: &[usize]) -> ProjectionTracker {
    let mut t = ProjectionTracker::new(a.rows()).unwrap();
    for &j in cols {
        t.absorb(&a.column(j)).unwrap();
    }
    t
}

pub fn frob_to_na(d: &DenseMatrix, o: &DMatrix<f64>) -> f64 {
    (to_na(d) - o).norm()
}
