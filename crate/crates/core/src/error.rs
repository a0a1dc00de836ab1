use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("modulus must be monic and irreducible: {0}")]
    BadModulus(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid octad polynomial: {0}")]
    InvalidSpec(String),
    #[error("degree-7 coefficient is nonzero; normalize the trace first")]
    NotNormalized,
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("degenerate octad: {0}")]
    Degenerate(String),
    #[error("field too large for enumeration: {0}")]
    FieldTooLarge(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
