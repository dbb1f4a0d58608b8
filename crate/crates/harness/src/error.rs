use std::path::PathBuf;

use thiserror::Error;

use crate::fit::FitError;

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Solver(#[from] dsogda::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed trace: {0}")]
    Trace(String),

    #[error("malformed summary: {0}")]
    Summary(String),

    #[error(transparent)]
    Fit(#[from] FitError),

    #[error("check failed: {0}")]
    Assertion(String),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// Process exit status for the CLI.
    pub fn exit_code(&self) -> i32 {
        use dsogda::Error as E;
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Solver(e) => match e {
                E::InvalidInput(_)
                | E::RegimeUnavailable(_)
                | E::NoFeasibleWeight { .. }
                | E::DegenerateConstants(_)
                | E::DimensionMismatch { .. }
                | E::Infeasible { .. } => 2,
                E::Diverged { .. } | E::NonFinite { .. } => 3,
                E::MeasureUnavailable(_) | E::DiagnosticUnavailable(_) | E::ConvergenceFailure { .. } => 4,
            },
            _ => 1,
        }
    }
}
