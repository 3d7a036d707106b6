use thiserror::Error;

/// Contract violations and resource errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),

    #[error("modulus {0} is not an odd square-free integer >= 3")]
    NotOddSquarefree(u64),

    #[error("gcd({a}, {m}) != 1")]
    NotCoprime { a: u64, m: u64 },

    #[error("character is not primitive")]
    NotPrimitive,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("value {0} is outside the symmetry model (|c| > 1.5)")]
    OutOfModel(f64),

    #[error("resource guard: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// Short machine-readable tag used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotOddPrime(_) => "not_odd_prime",
            Error::NotOddSquarefree(_) => "not_odd_squarefree",
            Error::NotCoprime { .. } => "not_coprime",
            Error::NotPrimitive => "not_primitive",
            Error::NotApplicable(_) => "not_applicable",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Empty(_) => "empty",
            Error::OutOfModel(_) => "out_of_model",
            Error::ResourceLimit(_) => "resource_limit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
