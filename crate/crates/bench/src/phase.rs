//! Exact-recovery frequency of OLS as a function of the measurement count.

use std::path::PathBuf;

use gols::ensembles::seed::derive_seed;
use gols::ensembles::{make_problem, MatrixEnsemble, SignalEnsemble};
use gols::fmt_f64;
use gols::solvers::ols_run;
use rayon::prelude::*;

use crate::config::PhaseTransitionSpec;
use crate::error::{BenchError, Result};
use crate::output::{ensure_dir, header_line, write_csv};
use crate::sweep::thread_pool;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRow {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
}

impl PhaseRow {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Binomial standard error `√(p (1 − p) / trials)`.
    pub fn stderr(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct PhaseReport {
    pub rows: Vec<PhaseRow>,
    /// Smallest `n` whose success rate reaches `1 − delta_target`.
    pub threshold_n: Option<usize>,
    pub csv: Option<PathBuf>,
}

/// Seed of `trial`; independent of `n`, so each trial uses the same signal
/// at every measurement count.
pub fn phase_seed(master_seed: u64, trial: usize) -> u64 {
    derive_seed(master_seed, &[trial as u64])
}

/// One noiseless OLS run: `true` iff the `k` selected columns are exactly the
/// true support.
pub fn recovers(spec: &PhaseTransitionSpec, n: usize, trial: usize) -> Result<bool> {
    let seed = phase_seed(spec.master_seed, trial);
    let me = MatrixEnsemble::new(spec.matrix_kind, n, spec.m).normalized(spec.normalize_columns);
    let se = SignalEnsemble::new(spec.signal_dist, spec.m, spec.k);
    let wrap = |source| BenchError::Solver {
        context: format!("phase n={n} trial={trial} seed={seed}"),
        source,
    };
    let p = make_problem(&me, &se, 0.0, seed).map_err(wrap)?;
    let res = match ols_run(&p.a, &p.y, spec.k) {
        Ok(r) => r,
        Err(gols::Error::EarlyStop { partial }) => *partial,
        Err(e) => return Err(wrap(e)),
    };
    Ok(res.sorted_support() == p.support_true)
}

/// Runs the experiment without writing files.
pub fn run_phase_rows(spec: &PhaseTransitionSpec, jobs: usize) -> Result<PhaseReport> {
    spec.validate()?;
    let tasks: Vec<(usize, usize)> = spec
        .n_values
        .iter()
        .flat_map(|&n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let hits: Vec<bool> = thread_pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(n, t)| recovers(spec, n, t))
            .collect::<Result<_>>()
    })?;
    let rows: Vec<PhaseRow> = spec
        .n_values
        .iter()
        .zip(hits.chunks(spec.trials))
        .map(|(&n, chunk)| PhaseRow {
            n,
            trials: spec.trials,
            successes: chunk.iter().filter(|&&h| h).count(),
        })
        .collect();
    let threshold_n = rows
        .iter()
        .find(|r| r.rate() >= 1.0 - spec.delta_target)
        .map(|r| r.n);
    Ok(PhaseReport {
        rows,
        threshold_n,
        csv: None,
    })
}

/// Runs the experiment and writes `phase.csv` into the output directory.
pub fn run_phase_transition(spec: &PhaseTransitionSpec, jobs: usize) -> Result<PhaseReport> {
    spec.validate()?;
    ensure_dir(&spec.output_dir)?;
    let mut report = run_phase_rows(spec, jobs)?;
    let threshold = report
        .threshold_n
        .map_or_else(|| "none".to_string(), |n| n.to_string());
    let header = format!(
        "{}\n# m={} k={} delta_target={} threshold_n={threshold}",
        header_line(&spec.config_hash()),
        spec.m,
        spec.k,
        fmt_f64(spec.delta_target)
    );
    let mut rows = vec![["n", "trials", "successes", "success_rate", "stderr"]
        .map(String::from)
        .to_vec()];
    rows.extend(report.rows.iter().map(|r| {
        vec![
            r.n.to_string(),
            r.trials.to_string(),
            r.successes.to_string(),
            fmt_f64(r.rate()),
            fmt_f64(r.stderr()),
        ]
    }));
    let path = spec.output_dir.join("phase.csv");
    write_csv(&path, &header, &rows)?;
    report.csv = Some(path);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gols::solvers::exhaustive_oracle;

    #[test]
    fn single_atom_always_recovers() {
        let spec = PhaseTransitionSpec {
            m: 8,
            k: 1,
            n_values: vec![8],
            trials: 25,
            ..PhaseTransitionSpec::default()
        };
        let report = run_phase_rows(&spec, 1).unwrap();
        assert_eq!(report.rows[0].successes, 25);
        assert_eq!(report.threshold_n, Some(8));

        for t in 0..25 {
            let seed = phase_seed(spec.master_seed, t);
            let me = MatrixEnsemble::new(spec.matrix_kind, 8, 8);
            let se = SignalEnsemble::new(spec.signal_dist, 8, 1);
            let p = make_problem(&me, &se, 0.0, seed).unwrap();
            assert_eq!(
                exhaustive_oracle(&p.a, &p.y, 1).unwrap().support,
                p.support_true
            );
        }
    }

    #[test]
    fn threshold_is_first_n_reaching_target() {
        let spec = PhaseTransitionSpec {
            m: 12,
            k: 2,
            n_values: vec![2, 12],
            trials: 40,
            ..PhaseTransitionSpec::default()
        };
        let report = run_phase_rows(&spec, 1).unwrap();
        let expected = report
            .rows
            .iter()
            .find(|r| r.successes as f64 >= 0.95 * 40.0)
            .map(|r| r.n);
        assert_eq!(report.threshold_n, expected);
        assert!(report.rows[0].successes < report.rows[1].successes);
    }

    #[test]
    fn rates_and_errors() {
        let row = PhaseRow {
            n: 4,
            trials: 100,
            successes: 75,
        };
        assert_eq!(row.rate(), 0.75);
        assert!((row.stderr() - (0.75f64 * 0.25 / 100.0).sqrt()).abs() < 1e-15);
    }
}
