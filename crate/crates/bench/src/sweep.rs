//! Monte-Carlo sweeps over the sparsity level.

use std::path::PathBuf;

use gols::ensembles::seed::derive_seed;
use gols::ensembles::{make_problem, MatrixEnsemble, SignalEnsemble, SparseProblem};
use gols::metrics::{aggregate, MetricsReport, TrialOutcome};
use gols::solvers::{gols_run, ols_run, omp_run, RecoveryResult, SolverConfig};
use gols::{fmt_f64, Error};
use rayon::prelude::*;

use crate::config::{Algorithm, ExperimentSpec};
use crate::error::{BenchError, Result};
use crate::output::{ensure_dir, header_line, write_csv};
use crate::plot::emit_plot_data;

pub const TRIAL_COLUMNS: [&str; 14] = [
    "algorithm",
    "n",
    "m",
    "k",
    "L",
    "trial",
    "seed",
    "err_components",
    "exact_support",
    "mse_full",
    "mse_topk",
    "residual_norm",
    "iterations",
    "elapsed_s",
];

pub const AGGREGATE_COLUMNS: [&str; 14] = [
    "algorithm",
    "n",
    "m",
    "k",
    "L",
    "trials",
    "err",
    "err_stddev",
    "exact_rate",
    "mse",
    "mse_topk",
    "time_mean_s",
    "time_stddev_s",
    "capped",
];

/// One solver variant of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Variant {
    pub algorithm: Algorithm,
    /// Columns per iteration; 1 for OLS and OMP.
    pub l: usize,
}

impl Variant {
    /// Series label used in plot files, e.g. `ols` or `gols_L2`.
    pub fn label(&self) -> String {
        match self.algorithm {
            Algorithm::Gols => format!("gols_L{}", self.l),
            other => other.tag().to_string(),
        }
    }

    /// Whether the iteration bound `min(k, ⌊n/L⌋)` (or `min(k, n)` for OMP)
    /// cuts the run short of `k` iterations.
    pub fn capped(&self, n: usize, k: usize) -> bool {
        k > n / self.l
    }

    pub fn solve(&self, p: &SparseProblem, k: usize) -> gols::Result<RecoveryResult> {
        let res = match self.algorithm {
            Algorithm::Ols => ols_run(&p.a, &p.y, k),
            Algorithm::Gols => gols_run(&p.a, &p.y, &SolverConfig::new(k, self.l)),
            Algorithm::Omp => omp_run(&p.a, &p.y, k),
        };
        match res {
            Err(Error::EarlyStop { partial }) => Ok(*partial),
            other => other,
        }
    }
}

pub fn variants(spec: &ExperimentSpec) -> Vec<Variant> {
    let mut out = Vec::new();
    for &algorithm in &spec.algorithms {
        match algorithm {
            Algorithm::Gols => out.extend(spec.l_values.iter().map(|&l| Variant { algorithm, l })),
            _ => out.push(Variant { algorithm, l: 1 }),
        }
    }
    out
}

/// Seed of trial `trial` at sparsity `k`. Shared by every variant, so all
/// algorithms see the same instances.
pub fn trial_seed(master_seed: u64, k: usize, trial: usize) -> u64 {
    derive_seed(master_seed, &[k as u64, trial as u64])
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub residual_norm: f64,
    pub iterations: usize,
    pub outcome: TrialOutcome,
}

impl TrialRecord {
    fn csv_row(&self) -> Vec<String> {
        let o = &self.outcome;
        vec![
            self.variant.algorithm.tag().to_string(),
            self.n.to_string(),
            self.m.to_string(),
            o.k.to_string(),
            o.l.to_string(),
            o.trial.to_string(),
            self.seed.to_string(),
            fmt_f64(o.component_recovery),
            o.exact_support.to_string(),
            fmt_f64(o.mse_full),
            fmt_f64(o.mse_topk),
            fmt_f64(self.residual_norm),
            self.iterations.to_string(),
            fmt_f64(o.elapsed_s),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellReport {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub capped: bool,
    pub metrics: MetricsReport,
}

impl CellReport {
    fn csv_row(&self) -> Vec<String> {
        let r = &self.metrics;
        vec![
            self.variant.algorithm.tag().to_string(),
            self.n.to_string(),
            self.m.to_string(),
            r.k.to_string(),
            r.l.to_string(),
            r.trials.to_string(),
            fmt_f64(r.err),
            fmt_f64(r.err_stddev),
            fmt_f64(r.exact_rate),
            fmt_f64(r.mse),
            fmt_f64(r.mse_topk),
            fmt_f64(r.time_mean_s),
            fmt_f64(r.time_stddev_s),
            self.capped.to_string(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub trial_csv: PathBuf,
    pub aggregate_csv: PathBuf,
    pub plot_files: Vec<PathBuf>,
    pub records: Vec<TrialRecord>,
    pub cells: Vec<CellReport>,
}

impl SweepReport {
    pub fn cell(&self, label: &str, k: usize) -> Option<&CellReport> {
        self.cells
            .iter()
            .find(|c| c.variant.label() == label && c.metrics.k == k)
    }
}

pub(crate) fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| BenchError::Config(format!("cannot start {jobs} workers: {e}")))
}

/// Runs every `(variant, k, trial)` of the grid without touching the file
/// system. Records come back ordered by variant, then `k`, then trial,
/// whatever the number of workers.
pub fn run_trials(spec: &ExperimentSpec, jobs: usize) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let variants = variants(spec);
    let tasks: Vec<(usize, usize)> = spec
        .k_values
        .iter()
        .flat_map(|&k| (0..spec.trials).map(move |t| (k, t)))
        .collect();

    let me =
        MatrixEnsemble::new(spec.matrix_kind, spec.n, spec.m).normalized(spec.normalize_columns);
    let per_task: Vec<Vec<TrialRecord>> = thread_pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(k, trial)| run_task(spec, &me, &variants, k, trial))
            .collect::<Result<_>>()
    })?;

    let mut records = Vec::with_capacity(per_task.len() * variants.len());
    for v in 0..variants.len() {
        records.extend(per_task.iter().map(|rs| rs[v].clone()));
    }
    Ok(records)
}

fn run_task(
    spec: &ExperimentSpec,
    me: &MatrixEnsemble,
    variants: &[Variant],
    k: usize,
    trial: usize,
) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(spec.master_seed, k, trial);
    let se = SignalEnsemble::new(spec.signal_dist, spec.m, k);
    let context = |v: &Variant| format!("{} k={k} trial={trial} seed={seed}", v.label());
    let p = make_problem(me, &se, spec.noise_sigma, seed).map_err(|source| BenchError::Solver {
        context: format!("instance k={k} trial={trial}"),
        source,
    })?;
    variants
        .iter()
        .map(|v| {
            let res = v.solve(&p, k).map_err(|source| BenchError::Solver {
                context: context(v),
                source,
            })?;
            let outcome = TrialOutcome::evaluate(
                v.algorithm.tag(),
                v.l,
                trial,
                &res.support,
                &res.x_hat,
                &p.support_true,
                &p.x_true,
                res.elapsed.as_secs_f64(),
            )
            .map_err(|source| BenchError::Solver {
                context: context(v),
                source,
            })?;
            Ok(TrialRecord {
                variant: *v,
                n: spec.n,
                m: spec.m,
                seed,
                residual_norm: res.residual_norm,
                iterations: res.iterations,
                outcome,
            })
        })
        .collect()
}

/// Groups records into `(variant, k)` cells, in first-seen order.
pub fn aggregate_records(records: &[TrialRecord]) -> Result<Vec<CellReport>> {
    let mut keys: Vec<(Variant, usize)> = Vec::new();
    for r in records {
        let key = (r.variant, r.outcome.k);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(variant, k)| {
            let cell: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.variant == variant && r.outcome.k == k)
                .collect();
            let outcomes: Vec<TrialOutcome> = cell.iter().map(|r| r.outcome.clone()).collect();
            let metrics = aggregate(&outcomes).map_err(|source| BenchError::Solver {
                context: format!("aggregate {} k={k}", variant.label()),
                source,
            })?;
            Ok(CellReport {
                variant,
                n: cell[0].n,
                m: cell[0].m,
                capped: variant.capped(cell[0].n, k),
                metrics,
            })
        })
        .collect()
}

/// Runs the sweep and writes `trials.csv`, `aggregate.csv` and plot data
/// (under `plot/`) into the spec's output directory.
pub fn run_sweep(spec: &ExperimentSpec, jobs: usize) -> Result<SweepReport> {
    spec.validate()?;
    ensure_dir(&spec.output_dir)?;
    let records = run_trials(spec, jobs)?;
    let cells = aggregate_records(&records)?;
    let header = header_line(&spec.config_hash());

    let trial_csv = spec.output_dir.join("trials.csv");
    let mut rows = vec![TRIAL_COLUMNS.iter().map(|s| s.to_string()).collect()];
    rows.extend(records.iter().map(TrialRecord::csv_row));
    write_csv(&trial_csv, &header, &rows)?;

    let aggregate_csv = spec.output_dir.join("aggregate.csv");
    let mut rows = vec![AGGREGATE_COLUMNS.iter().map(|s| s.to_string()).collect()];
    rows.extend(cells.iter().map(CellReport::csv_row));
    write_csv(&aggregate_csv, &header, &rows)?;

    let plot_files = emit_plot_data(&aggregate_csv, &spec.output_dir.join("plot"))?;
    Ok(SweepReport {
        trial_csv,
        aggregate_csv,
        plot_files,
        records,
        cells,
    })
}
