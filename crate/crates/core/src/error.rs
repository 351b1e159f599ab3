use thiserror::Error;

use crate::forms::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: i64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("weight {0} must be even")]
    OddWeight(i64),

    #[error("coefficient of q^{exponent} requested but series is only known below q^{reach}")]
    BeyondReach { exponent: i64, reach: i64 },

    #[error("cannot invert a series that is zero up to its reach")]
    ZeroSeries,

    #[error("root extraction: {0}")]
    Root(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid Gram matrix: {0}")]
    Gram(String),

    #[error("invalid survey config: {0}")]
    Config(String),
}
