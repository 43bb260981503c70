use thiserror::Error;

/// Errors raised by the arithmetic, symbol and experiment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("p ≢ 15 (mod 16)")]
    NotMinusOneMod16(i64),
    #[error("2 is not a square modulo {0}")]
    NoSquareRoot(i64),
    #[error("{0} is inert in Z[√2]")]
    InertPrime(i64),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
