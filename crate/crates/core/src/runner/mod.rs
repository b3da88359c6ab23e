//! Sweep configuration, result files, figure generation and the validation
//! suite behind the `oamlab` binary.

pub mod config;
pub mod figures;
pub mod output;
pub mod sweep;
pub mod validation;

use std::path::{Path, PathBuf};

use crate::error::Result;

pub use config::{LambdaSweep, LogRange, RunConfig};
pub use sweep::{run_sweep, ResultRecord, SweepResults};
pub use validation::{run_validation, CriterionReport, ValidationReport};

/// Runs the configured sweep and writes the result files into `out`.
pub fn simulate(config: &RunConfig, out: &Path, workers: Option<usize>) -> Result<Vec<PathBuf>> {
    let sweeps = run_sweep(config, workers)?;
    output::write_results(out, &sweeps)
}

/// Writes the enabled figures into `out`, inside a pool of `workers` threads.
pub fn figures(
    config: &RunConfig,
    out: &Path,
    results: Option<&Path>,
    workers: Option<usize>,
) -> Result<Vec<PathBuf>> {
    sweep::thread_pool(workers.or(config.workers))?.install(|| figures::write_figures(config, out, results))
}
