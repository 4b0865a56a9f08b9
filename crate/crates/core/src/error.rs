use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input does not match the expected shape or schema.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Operands do not fit together (domain/codomain, graph/system).
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// An operation's precondition does not hold for this input.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A computed object failed its post-hoc verification.
    #[error("verification failed: {0}")]
    Verification(String),
    /// A desk-scale bound was exceeded.
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Invalid(format!($($arg)*)) };
}

macro_rules! mismatch {
    ($($arg:tt)*) => { $crate::error::Error::Mismatch(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use mismatch;
