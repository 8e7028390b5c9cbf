use std::path::PathBuf;

/// Errors raised by parameter validation, experiment configuration and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("input value y[{index}] = {value} is not strictly positive")]
    NonPositiveInput { index: usize, value: f64 },

    #[error("index out of range: {what} = {value}, allowed {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("out-of-order update: expected n = {expected}, got n = {got}")]
    OutOfOrder { expected: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(&'static str),

    #[error("value is NaN: {0}")]
    NotANumber(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("failed to parse config {path}: {source}")]
    ConfigParse {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
