use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("window is not stably decreasing at t = {t}: supremum ratio {ratio} >= 1")]
    NotStablyDecreasing { t: f64, ratio: f64 },

    #[error("row selection needs alpha * beta <= 1, got {product}")]
    DensityTooLow { product: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no admissible (n0, kappa) pair in the search grid; best q = {best_q}")]
    NoAdmissiblePair { best_q: f64 },

    #[error("dominance hypotheses violated: {0}")]
    HypothesisScan(String),

    #[error("singular value iteration did not converge after {iterations} sweeps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
