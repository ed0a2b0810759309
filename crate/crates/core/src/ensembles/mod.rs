//! Seeded random problem instances `y = A x + e`.

mod fixture;
pub mod seed;

pub use fixture::{read_fixture, write_fixture, FIXTURE_MAGIC};

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DenseVector};
use seed::{stream_rng, STREAM_MATRIX, STREAM_NOISE, STREAM_NONZEROS, STREAM_SUPPORT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// i.i.d. `N(0, 1/n)` entries.
    Gaussian,
    /// i.i.d. entries uniform on `{+1/√n, −1/√n}`.
    Bernoulli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignalDist {
    /// Non-zeros i.i.d. `N(0, 1)`.
    GaussianUnit,
    /// Non-zeros uniform on `{+1, −1}`.
    Rademacher,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Gaussian => "gaussian",
            MatrixKind::Bernoulli => "bernoulli",
        }
    }
}

impl SignalDist {
    pub fn as_str(self) -> &'static str {
        match self {
            SignalDist::GaussianUnit => "gaussian-unit",
            SignalDist::Rademacher => "rademacher",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for SignalDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gaussian" => Ok(MatrixKind::Gaussian),
            "bernoulli" => Ok(MatrixKind::Bernoulli),
            other => Err(format!("unknown matrix kind `{other}`")),
        }
    }
}

impl FromStr for SignalDist {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gaussian-unit" => Ok(SignalDist::GaussianUnit),
            "rademacher" => Ok(SignalDist::Rademacher),
            other => Err(format!("unknown signal distribution `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixEnsemble {
    pub kind: MatrixKind,
    pub n: usize,
    pub m: usize,
    /// Rescale every column to exact unit norm after drawing.
    pub normalize_columns: bool,
}

impl MatrixEnsemble {
    pub fn new(kind: MatrixKind, n: usize, m: usize) -> Self {
        Self {
            kind,
            n,
            m,
            normalize_columns: false,
        }
    }

    pub fn normalized(mut self, yes: bool) -> Self {
        self.normalize_columns = yes;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignalEnsemble {
    pub dist: SignalDist,
    pub m: usize,
    pub k: usize,
}

impl SignalEnsemble {
    pub fn new(dist: SignalDist, m: usize, k: usize) -> Self {
        Self { dist, m, k }
    }
}

/// One instance of `y = A x + e`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseProblem {
    pub matrix: MatrixEnsemble,
    pub signal: SignalEnsemble,
    pub a: DenseMatrix,
    pub x_true: DenseVector,
    /// Ascending indices of the non-zeros of `x_true`.
    pub support_true: Vec<usize>,
    pub y: DenseVector,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl SparseProblem {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.a.cols()
    }

    pub fn k(&self) -> usize {
        self.support_true.len()
    }
}

/// Draws `A` from stream 0 of `seed`, row-major.
pub fn gen_matrix(e: &MatrixEnsemble, seed: u64) -> Result<DenseMatrix> {
    if e.n == 0 || e.m == 0 {
        return Err(Error::InvalidDimension(format!(
            "matrix ensemble {}x{} has an empty dimension",
            e.n, e.m
        )));
    }
    let mut rng = stream_rng(seed, STREAM_MATRIX);
    let scale = 1.0 / (e.n as f64).sqrt();
    let mut data: Vec<f64> = match e.kind {
        MatrixKind::Gaussian => (0..e.n * e.m)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                scale * z
            })
            .collect(),
        MatrixKind::Bernoulli => (0..e.n * e.m)
            .map(|_| if rng.random::<bool>() { scale } else { -scale })
            .collect(),
    };
    if e.normalize_columns {
        for j in 0..e.m {
            let norm = (0..e.n)
                .map(|i| data[i * e.m + j] * data[i * e.m + j])
                .sum::<f64>()
                .sqrt();
            if norm > 0.0 {
                for i in 0..e.n {
                    data[i * e.m + j] /= norm;
                }
            }
        }
    }
    DenseMatrix::from_row_major(e.n, e.m, data)
}

/// Draws a `k`-sparse signal: support uniformly from the `k`-subsets of
/// `0..m` (stream 1), non-zeros in ascending support order (stream 2).
/// Returns the signal and its ascending support.
pub fn gen_signal(e: &SignalEnsemble, seed: u64) -> Result<(DenseVector, Vec<usize>)> {
    if e.k == 0 {
        return Err(Error::InvalidSparsity);
    }
    if e.k > e.m {
        return Err(Error::InvalidDimension(format!(
            "sparsity {} exceeds signal length {}",
            e.k, e.m
        )));
    }
    let mut support_rng = stream_rng(seed, STREAM_SUPPORT);
    let mut support = index::sample(&mut support_rng, e.m, e.k).into_vec();
    support.sort_unstable();

    let mut value_rng = stream_rng(seed, STREAM_NONZEROS);
    let mut x = vec![0.0; e.m];
    for &j in &support {
        x[j] = match e.dist {
            SignalDist::GaussianUnit => loop {
                // an exact zero would shrink the support
                let v: f64 = StandardNormal.sample(&mut value_rng);
                if v != 0.0 {
                    break v;
                }
            },
            SignalDist::Rademacher => {
                if value_rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        };
    }
    Ok((DenseVector::new(x)?, support))
}

/// Builds `y = A x + e` with `e ~ N(0, noise_sigma² I)` from stream 3.
pub fn make_problem(
    me: &MatrixEnsemble,
    se: &SignalEnsemble,
    noise_sigma: f64,
    seed: u64,
) -> Result<SparseProblem> {
    if me.m != se.m {
        return Err(Error::InvalidDimension(format!(
            "matrix has {} columns but signal length is {}",
            me.m, se.m
        )));
    }
    if !(noise_sigma >= 0.0 && noise_sigma.is_finite()) {
        return Err(Error::InvalidDimension(format!(
            "noise_sigma must be finite and non-negative, got {noise_sigma}"
        )));
    }
    let a = gen_matrix(me, seed)?;
    let (x_true, support_true) = gen_signal(se, seed)?;
    let mut y = a.mul_vec(&x_true)?.into_vec();
    if noise_sigma > 0.0 {
        let noise = Normal::new(0.0, noise_sigma).expect("validated sigma");
        let mut rng = stream_rng(seed, STREAM_NOISE);
        y.iter_mut().for_each(|v| *v += noise.sample(&mut rng));
    }
    Ok(SparseProblem {
        matrix: *me,
        signal: *se,
        a,
        x_true,
        support_true,
        y: DenseVector::new(y)?,
        noise_sigma,
        seed,
    })
}
