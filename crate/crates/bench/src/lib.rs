//! Benchmark harness for the `gols` solvers: seeded sparsity sweeps,
//! OLS phase-transition runs, plot-data export and a runtime-scaling probe.

pub mod config;
pub mod error;
pub mod output;
pub mod phase;
pub mod plot;
pub mod probe;
pub mod sweep;

pub use config::{Algorithm, ExperimentSpec, PhaseTransitionSpec};
pub use error::{BenchError, Result};
pub use phase::{run_phase_transition, PhaseReport};
pub use plot::emit_plot_data;
pub use probe::{complexity_probe, ProbeReport, ProbeSpec};
pub use sweep::{run_sweep, SweepReport};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/harness.md")]
mod book_harness {}
