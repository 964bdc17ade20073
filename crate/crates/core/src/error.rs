use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
///
/// Violations of user-supplied data are `Invalid`; caps on enumeration are
/// `BudgetExceeded`; `Internal` marks a failed assertion that should
/// never fail, so it always indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{what} exceeded the budget of {cap}")]
    BudgetExceeded { what: &'static str, cap: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    Associativity(usize, usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
