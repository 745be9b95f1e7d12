use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {0:?} is reducible mod {1}")]
    Reducible(Vec<u32>, u32),
    #[error("polynomial {0:?} is reducible mod 3")]
    ReducibleModThree(Vec<u32>),
    #[error("malformed polynomial: {0}")]
    BadPolynomial(String),
    #[error("operands belong to different fields or rings")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is even")]
    EvenModulus(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("bad subsystem selection: {0}")]
    BadSubsystem(String),
    #[error("prime {0} not supported by this construction")]
    BadPrime(u32),
    #[error("the parameter must be non-zero")]
    ZeroParameter,
    #[error("the parameter is a zero divisor")]
    ZeroDivisorParameter,
    #[error("no product-covariant MUB fiducial is known for 2^{0}")]
    NotAvailable(usize),
    #[error("expected {expected} states, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("basis {0} is not orthonormal (deviation {1:e})")]
    NotOrthonormal(usize, f64),
    #[error("state is not equimodular")]
    NotEquimodular,
    #[error("search space of {0} candidates exceeds the limit of {1}")]
    SearchSpaceTooLarge(u128, u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
