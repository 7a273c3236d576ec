use thiserror::Error;

/// Errors produced anywhere in the toolkit.
///
/// The CLI maps each variant to an exit class through [`Error::exit_class`]:
/// malformed input and broken invariants are class 2, a solver or attack that
/// ran to completion without an answer (or hit a resource cap) is class 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("polynomial is not irreducible: {0}")]
    Reducible(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("message too large for platform")]
    MessageTooLarge,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("{0} not central")]
    NotCentral(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("unsupported version: {0}")]
    Version(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code associated with this error.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::NoSolution(_) | Error::NotCentral(_) | Error::CapExceeded(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
