use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("threshold {threshold} is outside the robust interval [{lo}, {hi}]")]
    NotRobust { threshold: f64, lo: f64, hi: f64 },

    #[error("operation requires a bounded prediction range")]
    UnboundedRange,

    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },

    #[error("data error: {0}")]
    Data(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
