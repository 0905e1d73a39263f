use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    NotDivisible,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("element is not invariant under q -> 1/q")]
    Asymmetric,
    #[error("element has half-integral powers of q")]
    HalfIntegralPower,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("constant term must be {expected} for this operation")]
    ConstantTerm { expected: &'static str },
    #[error("theta is undefined for the empty multipartition")]
    EmptyMultiPartition,
    #[error("{part} is not divisible by {divisor}")]
    NonDivisible { part: usize, divisor: usize },
    #[error("Hecke level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("central idempotents unavailable at level {0}")]
    IdempotentLevel(usize),
    #[error("degree cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix block")]
    Singular,
    #[error("structure violation: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
