use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one of the CLI
/// exit-code classes: [`Error::Invariant`] is an internal failure (exit 2),
/// everything else is a usage or input problem (exit 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("tuple of length {len} is not {m}-divisible")]
    NotDivisible { m: usize, len: usize },

    #[error("{what} needs {needed} elements, limit is {limit}")]
    LimitExceeded {
        what: String,
        needed: u128,
        limit: usize,
    },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not an alternation presentation: {0}")]
    NotAlternation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// True for failures that indicate a bug or a broken mathematical
    /// invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
