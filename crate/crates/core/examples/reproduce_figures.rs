//! Runs a reduced sweep and writes every figure into a directory
//! (default `figures_out`).

use std::path::PathBuf;

use oamlab::runner::{self, LambdaSweep, LogRange, RunConfig};

fn main() -> oamlab::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "figures_out".into());
    std::fs::create_dir_all(&out)?;
    let mut config = RunConfig::default();
    config.aperture.lambda = LambdaSweep::LogRange(LogRange {
        min: 0.005,
        max: 500.0,
        count: 12,
    });
    let mut written = runner::simulate(&config, &out, None)?;
    written.extend(runner::figures(&config, &out, None, None)?);
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}
