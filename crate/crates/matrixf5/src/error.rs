//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),

    #[error("division by zero in GF(p)")]
    DivisionByZero,

    #[error("monomial {0} does not divide {1}")]
    NotDivisible(String, String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid system spec: {0}")]
    InvalidSpec(String),

    #[error("change of variables failed to reach simultaneous Noether position after {0} attempts")]
    ChangeOfVariablesExhausted(usize),

    #[error("oracle pair limit exceeded ({0} pairs); instance too large for the Buchberger oracle")]
    OracleOverflow(usize),

    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
