use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields or rings")]
    Mismatch,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("invalid multiset: {0}")]
    InvalidMultiset(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration guard exceeded: {what} needs {size} items, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("deletion count out of range: received {received} symbols, blocklength {n}, radius {t}")]
    DeletionsOutOfRange { received: u64, n: u64, t: u64 },

    #[error("received multiset is not reachable from any codeword within {0} deletions")]
    Uncorrectable(u64),

    #[error("syndrome collision among error multisets of size {0}")]
    ConstructionUnsound(u32),

    #[error("independent computations disagree: {0}")]
    Inconsistent(String),

    #[error("code file: {0}")]
    CodeFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
