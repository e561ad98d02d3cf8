use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (non-prime modulus, singular generator, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Shapes or contexts of operands do not fit together.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A documented precondition does not hold for otherwise well-formed input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction was asked for outside the parameter range where it is defined.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("resource limit: {what} exceeds cap of {cap}")]
    Resource { what: String, cap: usize },

    /// Two independent computations of the same quantity disagreed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
