use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{run_biphoton, BiphotonRunSpec, EntanglementResult};
use crate::error::{Error, Result};

use super::config::RunConfig;

/// One row of the results files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub l0: i32,
    pub lambda: f64,
    pub delta_phi: f64,
    pub b_numeric: f64,
    pub b_analytic: f64,
    pub b_gaussian: f64,
    pub concurrence_numeric: f64,
    pub concurrence_universal: f64,
}

impl From<&EntanglementResult> for ResultRecord {
    fn from(r: &EntanglementResult) -> Self {
        Self {
            l0: r.l0,
            lambda: r.lambda,
            delta_phi: r.delta_phi,
            b_numeric: r.b_numeric,
            b_analytic: r.b_analytic,
            b_gaussian: r.b_gaussian,
            concurrence_numeric: r.concurrence,
            concurrence_universal: r.concurrence_universal,
        }
    }
}

/// Results of one sweep at a common propagation distance.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResults {
    pub z_rayleigh: f64,
    pub results: Vec<EntanglementResult>,
}

impl SweepResults {
    pub fn records(&self) -> Vec<ResultRecord> {
        self.results.iter().map(ResultRecord::from).collect()
    }
}

pub fn thread_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

/// Runs every `(lambda, l0)` case at distance `z_rayleigh` and returns the
/// results sorted by `(l0, lambda)`.
pub fn run_cases(config: &RunConfig, z_rayleigh: f64) -> Result<SweepResults> {
    config.validate()?;
    let grid = config.grid_spec()?;
    let distance = z_rayleigh * config.rayleigh_length();
    let mut specs = Vec::new();
    for &l0 in &config.l0 {
        for lambda in config.lambdas() {
            let spec = BiphotonRunSpec::new(l0, config.aperture_for(lambda)?, grid, config.beam.waist)?
                .with_wavenumber(config.beam.wavenumber)?
                .with_distance(distance)?;
            specs.push(spec);
        }
    }
    let mut results = specs
        .par_iter()
        .map(run_biphoton)
        .collect::<Result<Vec<_>>>()?;
    results.sort_by(|a, b| a.l0.cmp(&b.l0).then(a.lambda.total_cmp(&b.lambda)));
    Ok(SweepResults { z_rayleigh, results })
}

/// Sweeps every configured distance inside a pool of `workers` threads
/// (config value, then all cores).
pub fn run_sweep(config: &RunConfig, workers: Option<usize>) -> Result<Vec<SweepResults>> {
    let pool = thread_pool(workers.or(config.workers))?;
    pool.install(|| config.z_rayleigh.iter().map(|&z| run_cases(config, z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::config::LambdaSweep;

    fn small() -> RunConfig {
        let mut c = RunConfig::default();
        c.grid.n = 128;
        c.aperture.lambda = LambdaSweep::List(vec![10.0, 0.5, 2.0]);
        c.l0 = vec![2, 1];
        c
    }

    #[test]
    fn results_are_sorted_and_independent_of_workers() {
        let c = small();
        let one = run_sweep(&c, Some(1)).unwrap();
        let many = run_sweep(&c, Some(4)).unwrap();
        assert_eq!(one, many);
        let keys: Vec<(i32, f64)> = one[0].results.iter().map(|r| (r.l0, r.lambda)).collect();
        assert_eq!(keys, vec![(1, 0.5), (1, 2.0), (1, 10.0), (2, 0.5), (2, 2.0), (2, 10.0)]);
    }

    #[test]
    fn overlap_is_independent_of_distance() {
        let mut c = small();
        c.z_rayleigh = vec![0.0, 1.0];
        let runs = run_sweep(&c, None).unwrap();
        for (a, b) in runs[0].results.iter().zip(&runs[1].results) {
            assert!((a.b_numeric - b.b_numeric).abs() < 1e-8);
        }
    }
}
