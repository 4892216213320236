use std::path::PathBuf;

use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason} (got {value})")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("argument {x} outside the domain of the Bessel functions (finite, x >= 0)")]
    BesselDomain { x: f64 },

    #[error(
        "pump did not reach a steady state (residual {residual:.3e} 1/s after {elapsed:.3e} s)"
    )]
    NotConverged { residual: f64, elapsed: f64 },

    #[error("fluctuation matrix is singular at delta = {delta:.6e} rad/s (parametric oscillation threshold)")]
    Singular { delta: f64 },

    #[error("invalid detuning grid: {0}")]
    InvalidGrid(String),

    #[error("gain profile is empty")]
    EmptyProfile,

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: line {line}: {message}")]
    MalformedRow {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 3 for solver non-convergence, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotConverged { .. } => 3,
            _ => 2,
        }
    }
}
