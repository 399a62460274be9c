use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range. `param` is a dotted path
    /// such as `ladder.ratio` once the error has passed through config loading.
    #[error("invalid {param}: {message}")]
    Validation { param: String, message: String },

    #[error("derivative order {order} exceeds the supported maximum {max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("insufficient data: {usable} usable ladder points, at least {required} required")]
    InsufficientData { usable: usize, required: usize },

    #[error("fixed-point iteration diverged at iterate {iterate} (eps = {eps})")]
    Divergence { iterate: usize, eps: f64 },

    #[error("fixed-point iteration did not converge within {iterations} iterations (eps = {eps})")]
    NotConverged { iterations: usize, eps: f64 },

    #[error("lifespan exceeded: eps * t = {} >= 1", eps * t)]
    LifespanExceeded { eps: f64, t: f64 },

    #[error("time {t} outside [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(param: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            param: param.into(),
            message: message.into(),
        }
    }

    /// Prepends `prefix.` to the parameter path of a validation error.
    pub fn with_prefix(self, prefix: &str) -> Self {
        match self {
            Error::Validation { param, message } => Error::Validation {
                param: format!("{prefix}.{param}"),
                message,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
