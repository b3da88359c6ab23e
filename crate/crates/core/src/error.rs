use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the simulation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fields are sampled on different grids")]
    GridMismatch,

    #[error("field has zero power and cannot be normalized")]
    ZeroPower,

    #[error("polar radius {radius} exceeds the interpolable domain (max {limit})")]
    InterpolationOutOfRange { radius: f64, limit: f64 },

    #[error("adaptive quadrature did not converge (error estimate {estimate:e} after {intervals} intervals)")]
    QuadratureNonConvergence { estimate: f64, intervals: usize },

    #[error("objective is monotone over the whole search range; no minimum bracketed")]
    NoBracket,

    #[error("overlap has imaginary part {imag:e}, expected a real overlap")]
    SymmetryViolation { imag: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("missing results: {0}")]
    MissingResults(PathBuf),

    #[error("malformed field dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
