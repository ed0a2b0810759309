//! Experiment configuration files.
//!
//! A config is a TOML file with a `[sweep]` table, a `[phase]` table, or
//! both. Every key has a default, so an empty table runs the reference
//! `n = 64, m = 128` setup:
//!
//! ```toml
//! [sweep]
//! n = 64
//! m = 128
//! k_values = [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32]
//! L_values = [2, 3]
//! trials = 1000
//! matrix_kind = "gaussian"        # or "bernoulli"
//! signal_dist = "gaussian-unit"   # or "rademacher"
//! noise_sigma = 0.0
//! algorithms = ["ols", "gols", "omp"]
//! master_seed = 0
//! normalize_columns = false
//! output_dir = "results/sweep"
//!
//! [phase]
//! m = 128
//! k = 5
//! n_values = [8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64]
//! trials = 500
//! delta_target = 0.05
//! matrix_kind = "gaussian"
//! signal_dist = "gaussian-unit"
//! normalize_columns = false
//! master_seed = 0
//! output_dir = "results/phase"
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gols::ensembles::{MatrixKind, SignalDist};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ols,
    Gols,
    Omp,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Ols => "ols",
            Algorithm::Gols => "gols",
            Algorithm::Omp => "omp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ols" => Ok(Algorithm::Ols),
            "gols" => Ok(Algorithm::Gols),
            "omp" => Ok(Algorithm::Omp),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub n: usize,
    pub m: usize,
    pub k_values: Vec<usize>,
    pub l_values: Vec<usize>,
    pub trials: usize,
    pub matrix_kind: MatrixKind,
    pub signal_dist: SignalDist,
    pub noise_sigma: f64,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    pub normalize_columns: bool,
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTransitionSpec {
    pub m: usize,
    pub k: usize,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub delta_target: f64,
    pub matrix_kind: MatrixKind,
    pub signal_dist: SignalDist,
    pub normalize_columns: bool,
    pub master_seed: u64,
    pub output_dir: PathBuf,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            n: 64,
            m: 128,
            k_values: (1..=16).map(|i| 2 * i).collect(),
            l_values: vec![2, 3],
            trials: 1000,
            matrix_kind: MatrixKind::Gaussian,
            signal_dist: SignalDist::GaussianUnit,
            noise_sigma: 0.0,
            algorithms: vec![Algorithm::Ols, Algorithm::Gols, Algorithm::Omp],
            master_seed: 0,
            normalize_columns: false,
            output_dir: PathBuf::from("results/sweep"),
        }
    }
}

impl Default for PhaseTransitionSpec {
    fn default() -> Self {
        Self {
            m: 128,
            k: 5,
            n_values: vec![8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64],
            trials: 500,
            delta_target: 0.05,
            matrix_kind: MatrixKind::Gaussian,
            signal_dist: SignalDist::GaussianUnit,
            normalize_columns: false,
            master_seed: 0,
            output_dir: PathBuf::from("results/phase"),
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(BenchError::Config(msg));
        if self.n == 0 || self.m == 0 {
            return fail(format!(
                "dimensions must be positive, got n={} m={}",
                self.n, self.m
            ));
        }
        if self.k_values.is_empty() {
            return fail("k_values is empty".into());
        }
        if let Some(k) = self.k_values.iter().find(|&&k| k == 0 || k > self.m) {
            return fail(format!("k = {k} must lie in 1..={}", self.m));
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms selected".into());
        }
        if self.algorithms.contains(&Algorithm::Gols) {
            if self.l_values.is_empty() {
                return fail("L_values is empty".into());
            }
            if let Some(l) = self.l_values.iter().find(|&&l| l == 0 || l > self.n) {
                return fail(format!("L = {l} must lie in 1..={}", self.n));
            }
        }
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return fail(format!("noise_sigma = {} is invalid", self.noise_sigma));
        }
        Ok(())
    }

    /// Canonical description of everything that affects numeric output.
    /// The output directory is deliberately left out.
    pub fn canonical(&self) -> String {
        format!(
            "sweep;n={};m={};k={:?};L={:?};trials={};matrix={};signal={};noise={};algorithms={:?};seed={};normalize={}",
            self.n,
            self.m,
            self.k_values,
            self.l_values,
            self.trials,
            self.matrix_kind,
            self.signal_dist,
            gols::fmt_f64(self.noise_sigma),
            self.algorithms.iter().map(|a| a.tag()).collect::<Vec<_>>(),
            self.master_seed,
            self.normalize_columns
        )
    }

    pub fn config_hash(&self) -> String {
        short_hash(&self.canonical())
    }
}

impl PhaseTransitionSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(BenchError::Config(msg));
        if self.m == 0 || self.k == 0 || self.k > self.m {
            return fail(format!("need 1 <= k <= m, got k={} m={}", self.k, self.m));
        }
        if self.n_values.is_empty() {
            return fail("n_values is empty".into());
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return fail("n_values must be strictly increasing".into());
        }
        if self.n_values[0] == 0 || *self.n_values.last().unwrap() > self.m {
            return fail(format!("n_values must lie in 1..={}", self.m));
        }
        if self.trials == 0 {
            return fail("trials must be at least 1".into());
        }
        if !(self.delta_target > 0.0 && self.delta_target < 1.0) {
            return fail(format!(
                "delta_target = {} must lie in (0, 1)",
                self.delta_target
            ));
        }
        Ok(())
    }

    pub fn canonical(&self) -> String {
        format!(
            "phase;m={};k={};n={:?};trials={};delta={};matrix={};signal={};normalize={};seed={}",
            self.m,
            self.k,
            self.n_values,
            self.trials,
            gols::fmt_f64(self.delta_target),
            self.matrix_kind,
            self.signal_dist,
            self.normalize_columns,
            self.master_seed
        )
    }

    pub fn config_hash(&self) -> String {
        short_hash(&self.canonical())
    }
}

fn short_hash(s: &str) -> String {
    Sha256::digest(s.as_bytes())
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    sweep: Option<RawSweep>,
    phase: Option<RawPhase>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    n: Option<usize>,
    m: Option<usize>,
    k_values: Option<Vec<usize>>,
    #[serde(rename = "L_values")]
    l_values: Option<Vec<usize>>,
    trials: Option<usize>,
    matrix_kind: Option<String>,
    signal_dist: Option<String>,
    noise_sigma: Option<f64>,
    algorithms: Option<Vec<String>>,
    master_seed: Option<u64>,
    normalize_columns: Option<bool>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    m: Option<usize>,
    k: Option<usize>,
    n_values: Option<Vec<usize>>,
    trials: Option<usize>,
    delta_target: Option<f64>,
    matrix_kind: Option<String>,
    signal_dist: Option<String>,
    normalize_columns: Option<bool>,
    master_seed: Option<u64>,
    output_dir: Option<PathBuf>,
}

fn parse_tag<T: FromStr<Err = String>>(s: Option<String>, default: T) -> Result<T> {
    s.map_or(Ok(default), |s| s.parse().map_err(BenchError::Config))
}

fn parse_file(text: &str) -> Result<ConfigFile> {
    toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| BenchError::io(path, e))
}

/// Parses the `[sweep]` table of a config string.
pub fn parse_sweep(text: &str) -> Result<ExperimentSpec> {
    let raw = parse_file(text)?
        .sweep
        .ok_or_else(|| BenchError::Config("missing [sweep] table".into()))?;
    let d = ExperimentSpec::default();
    let algorithms = match raw.algorithms {
        Some(list) => list
            .iter()
            .map(|s| s.parse().map_err(BenchError::Config))
            .collect::<Result<Vec<Algorithm>>>()?,
        None => d.algorithms,
    };
    let spec = ExperimentSpec {
        n: raw.n.unwrap_or(d.n),
        m: raw.m.unwrap_or(d.m),
        k_values: raw.k_values.unwrap_or(d.k_values),
        l_values: raw.l_values.unwrap_or(d.l_values),
        trials: raw.trials.unwrap_or(d.trials),
        matrix_kind: parse_tag(raw.matrix_kind, d.matrix_kind)?,
        signal_dist: parse_tag(raw.signal_dist, d.signal_dist)?,
        noise_sigma: raw.noise_sigma.unwrap_or(d.noise_sigma),
        algorithms,
        master_seed: raw.master_seed.unwrap_or(d.master_seed),
        normalize_columns: raw.normalize_columns.unwrap_or(d.normalize_columns),
        output_dir: raw.output_dir.unwrap_or(d.output_dir),
    };
    spec.validate()?;
    Ok(spec)
}

/// Parses the `[phase]` table of a config string.
pub fn parse_phase(text: &str) -> Result<PhaseTransitionSpec> {
    let raw = parse_file(text)?
        .phase
        .ok_or_else(|| BenchError::Config("missing [phase] table".into()))?;
    let d = PhaseTransitionSpec::default();
    let spec = PhaseTransitionSpec {
        m: raw.m.unwrap_or(d.m),
        k: raw.k.unwrap_or(d.k),
        n_values: raw.n_values.unwrap_or(d.n_values),
        trials: raw.trials.unwrap_or(d.trials),
        delta_target: raw.delta_target.unwrap_or(d.delta_target),
        matrix_kind: parse_tag(raw.matrix_kind, d.matrix_kind)?,
        signal_dist: parse_tag(raw.signal_dist, d.signal_dist)?,
        normalize_columns: raw.normalize_columns.unwrap_or(d.normalize_columns),
        master_seed: raw.master_seed.unwrap_or(d.master_seed),
        output_dir: raw.output_dir.unwrap_or(d.output_dir),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn load_sweep(path: &Path) -> Result<ExperimentSpec> {
    parse_sweep(&read(path)?)
}

pub fn load_phase(path: &Path) -> Result<PhaseTransitionSpec> {
    parse_phase(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_gives_reference_setup() {
        let spec = parse_sweep("[sweep]\n").unwrap();
        assert_eq!(spec, ExperimentSpec::default());
        assert_eq!(spec.k_values.first(), Some(&2));
        assert_eq!(spec.k_values.last(), Some(&32));
        let phase = parse_phase("[phase]").unwrap();
        assert_eq!(phase, PhaseTransitionSpec::default());
    }

    #[test]
    fn full_sweep_table() {
        let text = r#"
            [sweep]
            n = 16
            m = 32
            k_values = [2, 4]
            L_values = [2]
            trials = 3
            matrix_kind = "bernoulli"
            signal_dist = "rademacher"
            algorithms = ["omp", "gols"]
            master_seed = 9
            output_dir = "out"
        "#;
        let spec = parse_sweep(text).unwrap();
        assert_eq!(spec.n, 16);
        assert_eq!(spec.matrix_kind, MatrixKind::Bernoulli);
        assert_eq!(spec.signal_dist, SignalDist::Rademacher);
        assert_eq!(spec.algorithms, vec![Algorithm::Omp, Algorithm::Gols]);
        assert_eq!(spec.output_dir, PathBuf::from("out"));
    }

    #[test]
    fn invalid_configs_are_config_errors() {
        for text in [
            "[sweep]\nk_values = [200]",
            "[sweep]\ntrials = 0",
            "[sweep]\nL_values = [0]",
            "[sweep]\nalgorithms = [\"lasso\"]",
            "[sweep]\nmatrix_kind = \"fourier\"",
            "[sweep]\nbogus = 1",
            "[phase]",
            "not toml at all [",
        ] {
            let err = parse_sweep(text).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{text}: {err}");
        }
        for text in [
            "[phase]\nn_values = [16, 8]",
            "[phase]\nn_values = [200]",
            "[phase]\ndelta_target = 1.5",
        ] {
            assert_eq!(parse_phase(text).unwrap_err().exit_code(), 1);
        }
    }

    #[test]
    fn hash_ignores_output_dir_but_not_seed() {
        let a = ExperimentSpec::default();
        let mut b = a.clone();
        b.output_dir = PathBuf::from("elsewhere");
        assert_eq!(a.config_hash(), b.config_hash());
        b.master_seed = 1;
        assert_ne!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 16);
    }
}
