use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gols::fmt_f64;
use gols_bench::config::{load_phase, load_sweep};
use gols_bench::probe::{complexity_probe, ProbeSpec};
use gols_bench::{emit_plot_data, run_phase_transition, run_sweep, Result};

#[derive(Debug, Parser)]
#[command(
    name = "gols-bench",
    version,
    about = "Sparse-recovery benchmark harness"
)]
struct Cli {
    /// Override the master seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for trial execution (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Time GOLS over m = 128..1024 at n = 64, k = 8, L = 2 and report the
    /// log-log slope.
    #[arg(long)]
    complexity_probe: bool,

    /// Repetitions per m for the complexity probe.
    #[arg(long, default_value_t = 21)]
    probe_reps: usize,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep the sparsity level; writes trials.csv, aggregate.csv and plot data.
    Sweep { config: PathBuf },
    /// OLS exact-recovery rate versus the number of measurements.
    Phase { config: PathBuf },
    /// Plot data files from an aggregate CSV.
    Plot {
        aggregate: PathBuf,
        /// Output directory (defaults to the CSV's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    if cli.complexity_probe {
        let spec = ProbeSpec {
            reps: cli.probe_reps,
            seed: cli.seed.unwrap_or(0),
            ..ProbeSpec::default()
        };
        let report = complexity_probe(&spec)?;
        println!("m,median_s");
        for (m, t) in &report.points {
            println!("{m},{}", fmt_f64(*t));
        }
        println!("# log-log slope = {:.3}", report.slope);
        if cli.command.is_none() {
            return Ok(());
        }
    }

    match cli.command {
        Some(Command::Sweep { config }) => {
            let mut spec = load_sweep(&config)?;
            if let Some(seed) = cli.seed {
                spec.master_seed = seed;
            }
            let report = run_sweep(&spec, jobs)?;
            for c in report.cells.iter().filter(|c| c.capped) {
                eprintln!(
                    "warning: {} at k={} hits the iteration cap (n={}, L={})",
                    c.variant.label(),
                    c.metrics.k,
                    c.n,
                    c.variant.l
                );
            }
            println!(
                "{:<10} {:>4} {:>8} {:>8} {:>12} {:>12}",
                "series", "k", "err", "exact", "mse", "time_s"
            );
            for c in &report.cells {
                let r = &c.metrics;
                println!(
                    "{:<10} {:>4} {:>8.4} {:>8.4} {:>12.4e} {:>12.4e}",
                    c.variant.label(),
                    r.k,
                    r.err,
                    r.exact_rate,
                    r.mse,
                    r.time_mean_s
                );
            }
            println!("wrote {}", report.trial_csv.display());
            println!("wrote {}", report.aggregate_csv.display());
        }
        Some(Command::Phase { config }) => {
            let mut spec = load_phase(&config)?;
            if let Some(seed) = cli.seed {
                spec.master_seed = seed;
            }
            let report = run_phase_transition(&spec, jobs)?;
            println!("{:>5} {:>8} {:>8}", "n", "rate", "stderr");
            for r in &report.rows {
                println!("{:>5} {:>8.4} {:>8.4}", r.n, r.rate(), r.stderr());
            }
            match report.threshold_n {
                Some(n) => println!("threshold n* = {n} (rate >= {})", 1.0 - spec.delta_target),
                None => println!("no n reached rate >= {}", 1.0 - spec.delta_target),
            }
            if let Some(p) = report.csv {
                println!("wrote {}", p.display());
            }
        }
        Some(Command::Plot { aggregate, out }) => {
            let out = out.unwrap_or_else(|| {
                aggregate
                    .parent()
                    .map_or_else(|| PathBuf::from("."), |p| p.join("plot"))
            });
            for p in emit_plot_data(&aggregate, &out)? {
                println!("wrote {}", p.display());
            }
        }
        None if cli.complexity_probe => {}
        None => {
            eprintln!("nothing to do: pass a subcommand or --complexity-probe (see --help)");
            return Err(gols_bench::BenchError::Config("no command".into()));
        }
    }
    Ok(())
}
