use thiserror::Error;

/// Errors surfaced by the library's public operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("malformed form {0:?}: expected \"a,b,c\"")]
    MalformedForm(String),
    #[error("argument must be positive, got {0}")]
    NonPositive(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{arg} exceeds the function limit {limit}")]
    OutOfRange { arg: u64, limit: u64 },
    #[error("malformed family {0:?}: expected identity, const1 or fp:<p>")]
    MalformedFamily(String),
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("variable does not occur with positive degree")]
    MissingVariable,
    #[error("degree cap {0} exceeded")]
    Deferred(u32),
    #[error("quadratic does not split into integer-linear roots: {0}")]
    NoLinearRoots(String),
    #[error("replay step {step} failed: {reason}")]
    Replay { step: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
