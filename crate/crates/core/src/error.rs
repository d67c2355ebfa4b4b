use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field order {p}^{e} exceeds the cap of {cap}")]
    FieldTooLarge { p: u64, e: u32, cap: u64 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not divide the field degree {1}")]
    InvalidSubfield(u32, u32),
    #[error("square classes are undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is incompatible with the request: {0}")]
    IncompatibleForm(String),
    #[error("the zero vector has no class")]
    ZeroVector,
    #[error("{what} has size {size}, above the cap of {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("connection set contains the zero vector")]
    ContainsZero,
    #[error("connection set is not closed under negation")]
    NotSymmetric,
    #[error("connection set does not span the space")]
    NotSpanning,
    #[error("{0} is not divisible by {1}")]
    NotDivisible(u128, u128),
    #[error("golden data is malformed: {0}")]
    Golden(String),
}
