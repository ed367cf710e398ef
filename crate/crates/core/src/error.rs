use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("not a comparability graph: {0}")]
    NotComparability(String),

    /// The requested construction does not apply; the caller should ask the oracle instead.
    #[error("{0}")]
    UseOracle(String),

    #[error("{what}: size {size} exceeds the configured limit of {limit}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// A constructed word failed its own representation certificate.
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
