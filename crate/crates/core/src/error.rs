use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("denominator {den} is not invertible modulo {modulus}")]
    NonInvertible { den: i64, modulus: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("shape or side mismatch: {0}")]
    Mismatch(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("not a Lie structure: {0}")]
    NotLie(String),

    /// Raised before any enumeration whose size exceeds the configured cap.
    #[error("{what} exceeds budget: attempted {size}, limit {limit}")]
    Budget { what: String, size: u128, limit: u128 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("Magnus-Lazard hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("regularity violated: {0}")]
    Regularity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, size: u128, limit: u128) -> Self {
        Error::Budget { what: what.into(), size, limit }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
