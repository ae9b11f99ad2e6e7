//! Error type shared by all modules of the crate.

/// Errors reported by construction, evaluation and I/O routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its documented domain (non-prime base,
    /// mismatched bases, wrong modulus degree, index out of range, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input violates a precondition in a way that makes the requested
    /// quantity undefined (e.g. a digit logarithm of the zero polynomial).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The operation is only defined for a specific base.
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    /// The request would exceed a built-in feasibility guard.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// An incremental construction was driven out of sequence.
    #[error("internal state error: {0}")]
    InternalState(String),

    /// Malformed textual input (weight specifications, vector files).
    #[error("parse error at {position}: {message}")]
    Parse {
        /// 1-based line or column of the offending token.
        position: usize,
        /// Description of what was expected.
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
