use thiserror::Error;

/// Errors raised by the numeric, basket, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("non-integral value {0}")]
    NonIntegral(String),

    #[error("invalid rational '{0}'")]
    RationalSyntax(String),

    #[error("invalid basket item '{item}': {reason}")]
    BasketItem { item: String, reason: String },

    #[error("invalid orbifold point (b={b}, r={r}): {reason}")]
    OrbifoldPoint { b: u64, r: u64, reason: &'static str },

    #[error("volume must be positive, got {0}")]
    NonPositiveVolume(String),

    #[error("inconsistent numerical data at m={m}: Riemann-Roch gives {value}")]
    InconsistentData { m: u64, value: String },

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("not a valid hypersurface numerator: coefficient of q^{m} is {value}")]
    NegativeCoefficient { m: u64, value: String },

    #[error("invalid family (a={a}, b={b}): require 1 <= a <= b")]
    Family { a: u64, b: u64 },

    #[error("truncation too small: need N >= {needed}, got {given}")]
    TruncationTooSmall { needed: u64, given: u64 },

    #[error("invalid setup parameters: {0}")]
    Setup(String),

    #[error("insufficient data: {0}")]
    InsufficientData(&'static str),

    #[error("invalid search bounds: {0}")]
    SearchBounds(String),

    #[error("table line {line}: {reason}")]
    Table { line: u64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
