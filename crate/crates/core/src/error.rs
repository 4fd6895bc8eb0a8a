use thiserror::Error;

/// Errors raised by the ring discrimination routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    ConvergenceFailure { achieved: f64, requested: f64 },

    #[error("index out of range: {index} (truncation {truncation})")]
    IndexOutOfRange { index: usize, truncation: usize },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
