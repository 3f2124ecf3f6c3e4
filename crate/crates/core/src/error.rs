use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid endpoint pair: {0}")]
    InvalidPair(String),

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("polynomial does not decompose through T_{d}; offending degrees {offending:?}")]
    NotDecomposable { d: u64, offending: Vec<usize> },

    #[error("operation requires an exactly represented endpoint pair")]
    NonExactPair,

    #[error("polynomial is not in the moment space; violating degrees {0:?}")]
    NotAMember(Vec<usize>),

    #[error("{0} is a branch point of the inverse Chebyshev map")]
    BranchPoint(String),

    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
