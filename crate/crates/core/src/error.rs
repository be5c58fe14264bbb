use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inexact division")]
    InexactDivision,
    #[error("shape has more rows than the alphabet has variables")]
    ShapeTooLong,
    #[error("degree exceeds the bound: {0}")]
    DegreeTooHigh(String),
    #[error("repeated node in interpolation")]
    RepeatedNode,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial does not lie in {0}")]
    NotInSpace(String),
    #[error("operation requires characteristic zero")]
    WrongCharacteristic,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("denominator not cleared")]
    DenominatorNotCleared,
    #[error("vertex {0} cannot be rotated")]
    NotRotatable(String),
    #[error("size vector is not generic")]
    NotGeneric,
    #[error("too many variables: {0} (at most 15)")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
