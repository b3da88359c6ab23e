use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::aperture::{AngularAperture, LAMBDA_MAX, LAMBDA_MIN};
use crate::error::{Error, Result};
use crate::field::{GridSpec, DEFAULT_WAVENUMBER};

/// JSON schema of [`RunConfig`], printed by `--print-config-schema`.
pub const CONFIG_SCHEMA: &str = include_str!("config.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    /// Half extent of the square grid, in length units.
    pub half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    pub waist: f64,
    #[serde(default = "default_wavenumber")]
    pub wavenumber: f64,
}

fn default_wavenumber() -> f64 {
    DEFAULT_WAVENUMBER
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaSweep {
    LogRange(LogRange),
    List(Vec<f64>),
}

impl LambdaSweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            LambdaSweep::List(v) => v.clone(),
            LambdaSweep::LogRange(r) => log_spaced(r.min, r.max, r.count),
        }
    }
}

/// `count` points from `min` to `max`, both included, uniform in `log`.
pub fn log_spaced(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    let (a, b) = (min.ln(), max.ln());
    (0..count)
        .map(|k| match k {
            0 => min,
            k if k == count - 1 => max,
            k => (a + (b - a) * k as f64 / (count - 1) as f64).exp(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApertureConfig {
    pub lambda: LambdaSweep,
    /// Super-Gaussian radius in length units.
    pub radius: f64,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FigureConfig {
    pub fig1: bool,
    pub fig2: bool,
    pub fig3: bool,
    pub fig4: bool,
    pub fig1_lambdas: Vec<f64>,
    pub fig3_lambda: f64,
    pub fig3_l0: Vec<i32>,
}

impl Default for FigureConfig {
    fn default() -> Self {
        Self {
            fig1: true,
            fig2: true,
            fig3: true,
            fig4: true,
            fig1_lambdas: vec![0.5, 2.0, 10.0],
            fig3_lambda: 10.0,
            fig3_l0: vec![2, 5],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub beam: BeamConfig,
    pub aperture: ApertureConfig,
    pub l0: Vec<i32>,
    /// Propagation distances in Rayleigh lengths.
    pub z_rayleigh: Vec<f64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub figures: FigureConfig,
    #[serde(default)]
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig { n: 512, half_width: 4.0 },
            beam: BeamConfig {
                waist: 1.0,
                wavenumber: DEFAULT_WAVENUMBER,
            },
            aperture: ApertureConfig {
                lambda: LambdaSweep::LogRange(LogRange {
                    min: 0.005,
                    max: 500.0,
                    count: 40,
                }),
                radius: 3.0,
                power: 12,
            },
            l0: vec![1, 2, 5],
            z_rayleigh: vec![0.0],
            output_dir: None,
            figures: FigureConfig::default(),
            workers: None,
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| config_err(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.grid.n, self.grid.half_width).map_err(|e| config_err(format!("grid: {e}")))
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.aperture.lambda.values()
    }

    pub fn aperture_for(&self, lambda: f64) -> Result<AngularAperture> {
        AngularAperture::new(lambda, self.aperture.radius, self.aperture.power)
            .map_err(|e| config_err(format!("aperture: {e}")))
    }

    pub fn rayleigh_length(&self) -> f64 {
        crate::field::rayleigh_length(self.beam.wavenumber, self.beam.waist)
    }

    /// Checks every field; errors are [`Error::Config`].
    pub fn validate(&self) -> Result<()> {
        self.grid_spec()?;
        if !(self.beam.waist > 0.0 && self.beam.waist.is_finite()) {
            return Err(config_err("beam.waist must be positive"));
        }
        if !(self.beam.wavenumber > 0.0 && self.beam.wavenumber.is_finite()) {
            return Err(config_err("beam.wavenumber must be positive"));
        }
        if let LambdaSweep::LogRange(r) = &self.aperture.lambda {
            if r.count == 0 || !(r.min > 0.0) || !(r.max >= r.min) {
                return Err(config_err("aperture.lambda.log_range needs 0 < min <= max and count >= 1"));
            }
        }
        let lambdas = self.lambdas();
        if lambdas.is_empty() {
            return Err(config_err("aperture.lambda is empty"));
        }
        for l in lambdas.iter().chain(&self.figures.fig1_lambdas).chain([&self.figures.fig3_lambda]) {
            if !(LAMBDA_MIN..=LAMBDA_MAX).contains(l) {
                return Err(config_err(format!(
                    "lambda {l} outside [{LAMBDA_MIN:e}, {LAMBDA_MAX:e}]"
                )));
            }
        }
        self.aperture_for(lambdas[0])?;
        if self.l0.is_empty() || self.l0.iter().any(|&l| l < 1) {
            return Err(config_err("l0 must be a non-empty list of integers >= 1"));
        }
        if self.figures.fig3_l0.iter().any(|&l| l < 0) {
            return Err(config_err("figures.fig3_l0 must be non-negative"));
        }
        if self.z_rayleigh.is_empty() || self.z_rayleigh.iter().any(|z| !(*z >= 0.0 && z.is_finite())) {
            return Err(config_err("z_rayleigh must be a non-empty list of finite values >= 0"));
        }
        if self.workers == Some(0) {
            return Err(config_err("workers must be >= 1"));
        }
        Ok(())
    }
}
