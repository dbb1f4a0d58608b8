use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point lies outside the feasible set (violation {violation:.3e})")]
    Infeasible { violation: f64 },

    #[error("iteration diverged at t = {iteration}")]
    Diverged { iteration: usize },

    #[error("degenerate constants: {0}")]
    DegenerateConstants(String),

    #[error(
        "no feasible smoothing weight found; best candidate r = {best_r:.6e} \
         (eta_lower {eta_lower:.3e}, eta_upper {eta_upper:.3e})"
    )]
    NoFeasibleWeight {
        best_r: f64,
        eta_lower: f64,
        eta_upper: f64,
    },

    #[error("regime unavailable: {0}")]
    RegimeUnavailable(String),

    #[error("measure unavailable: {0}")]
    MeasureUnavailable(String),

    #[error("diagnostic unavailable: {0}")]
    DiagnosticUnavailable(String),

    #[error("inner solve stopped after {iterations} iterations with residual {residual:.3e}")]
    ConvergenceFailure { iterations: usize, residual: f64 },
}
