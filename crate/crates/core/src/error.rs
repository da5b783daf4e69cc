use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the library. Every variant maps to one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("enumeration budget exceeded: {count} candidates, budget {budget}")]
    Budget { count: BigUint, budget: u64 },

    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),

    #[error("disagreement: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
