//! Dense real linear algebra: matrices, vectors, the complement-projector
//! tracker and Householder least squares.

mod projection;
mod qr;

pub use projection::ProjectionTracker;
pub use qr::{least_squares, HouseholderQr, RANK_TOL};

use std::ops::Index;

use crate::error::{Error, Result};

/// Dense vector with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector(Vec<f64>);

impl DenseVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self(entries))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    /// Unit vector `e_i` of length `len`.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = vec![0.0; len];
        v[i] = 1.0;
        Self(v)
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite()));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &DenseVector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn sub(&self, other: &DenseVector) -> Result<DenseVector> {
        if self.len() != other.len() {
            return Err(Error::InvalidDimension(format!(
                "vector lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

impl Index<usize> for DenseVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for DenseVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

/// Dense row-major matrix with at least one row and one column and finite
/// entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!(
                "matrix shape {rows}x{cols} has an empty dimension"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidDimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDimension("ragged rows".into()));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[DenseVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, DenseVector::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidDimension("columns differ in length".into()));
        }
        let cols = columns.len();
        let mut data = vec![0.0; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.as_slice().iter().enumerate() {
                data[i * cols + j] = *v;
            }
        }
        Self::from_row_major(rows, cols, data)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self::from_row_major(n, n, data)
    }

    pub(crate) fn from_row_major_unchecked(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> DenseVector {
        DenseVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        DenseMatrix::from_row_major_unchecked(self.cols, self.rows, data)
    }

    /// Sub-matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<DenseMatrix> {
        if indices.is_empty() {
            return Err(Error::InvalidDimension("no columns selected".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.cols) {
            return Err(Error::InvalidDimension(format!(
                "column {bad} out of range for {} columns",
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(indices.iter().map(|&j| row[j]));
        }
        Ok(DenseMatrix::from_row_major_unchecked(
            self.rows,
            indices.len(),
            data,
        ))
    }

    pub fn mul_vec(&self, v: &DenseVector) -> Result<DenseVector> {
        if v.len() != self.cols {
            return Err(Error::InvalidDimension(format!(
                "cannot multiply {}x{} matrix by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(DenseVector(
            (0..self.rows)
                .map(|i| dot(self.row(i), v.as_slice()))
                .collect(),
        ))
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidDimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut data[i * other.cols..(i + 1) * other.cols];
            for (p, &a) in self.row(i).iter().enumerate() {
                for (o, &b) in out.iter_mut().zip(other.row(p)) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseMatrix::from_row_major_unchecked(
            self.rows, other.cols, data,
        ))
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    /// Frobenius norm of `self - other`.
    pub fn frobenius_distance(&self, other: &DenseMatrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidDimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_finite(entries: &[f64]) -> Result<()> {
    match entries.iter().position(|v| !v.is_finite()) {
        Some(pos) => Err(Error::NonFinite(pos)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(
            DenseMatrix::from_row_major(0, 3, vec![]),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            DenseMatrix::from_row_major(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        ));
        assert!(matches!(
            DenseVector::new(vec![f64::INFINITY]),
            Err(Error::NonFinite(0))
        ));
        assert!(DenseMatrix::from_row_major(2, 2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn column_selection_and_transpose() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let s = m.select_columns(&[2, 0]).unwrap();
        assert_eq!(s.as_slice(), &[3.0, 1.0, 6.0, 4.0]);
        assert_eq!(m.transpose().row(2), &[3.0, 6.0]);
        assert_eq!(m.column(1).as_slice(), &[2.0, 5.0]);
        assert!(m.select_columns(&[3]).is_err());
        let back = DenseMatrix::from_columns(&[m.column(0), m.column(1), m.column(2)]).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn products() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let v = DenseVector::new(vec![1.0, -1.0]).unwrap();
        assert_eq!(m.mul_vec(&v).unwrap().as_slice(), &[-1.0, -1.0]);
        let mm = m.matmul(&m).unwrap();
        assert_eq!(mm.as_slice(), &[7.0, 10.0, 15.0, 22.0]);
        assert_eq!(m.trace(), 5.0);
    }
}
