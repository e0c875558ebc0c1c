use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence charge is {charge}, expected 1")]
    ChargeNotOne { charge: i64 },

    #[error("no tree uses exactly these degrees: charge is {charge}, expected 1")]
    NotConstructible { charge: i64 },

    #[error("charge computation overflowed")]
    ChargeOverflow,

    #[error("rotation index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("prefix code is truncated: {missing} operand(s) missing")]
    Truncated { missing: usize },

    #[error("prefix code has trailing symbols: complete tree after {consumed} of {len} symbols")]
    TrailingSymbols { consumed: usize, len: usize },

    #[error("operator alphabet has no symbols for arity {0}")]
    MissingArity(usize),

    #[error("operator alphabet lists no symbols for arity {0}")]
    EmptySymbols(usize),

    #[error("{nodes} nodes exceeds the exhaustive enumeration bound of {bound}")]
    TooLarge { nodes: usize, bound: usize },

    #[error("degree multiset is empty")]
    EmptyMultiset,

    #[error("invalid degree spec: {0}")]
    InvalidSpec(String),

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Invariant(&'static str),
}
