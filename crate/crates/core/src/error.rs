use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A brute-force guard refused the input.
    #[error("size limit exceeded: {guard} (limit {limit}, got {actual})")]
    SizeLimit {
        guard: &'static str,
        limit: usize,
        actual: usize,
    },

    /// The input lies outside the range where a formula or bound is asserted.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("deadline reached before the search completed")]
    Incomplete,

    /// A guarantee that should hold unconditionally failed. This is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
