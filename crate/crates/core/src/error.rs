use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be a positive integer, got 0")]
    Zero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("argument {value} lies outside the domain 1..={limit}")]
    OutOfDomain { value: String, limit: u64 },

    #[error("table limit {requested} exceeds the supported maximum {max}")]
    LimitTooLarge { requested: u64, max: u64 },

    #[error("tables up to {limit} need about {needed} bytes but the memory budget is {budget}")]
    MemoryBudget {
        limit: u64,
        needed: u64,
        budget: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sample grid contains no points at or above the claim threshold")]
    EmptyGrid,

    #[error("bounding function vanishes at x = {0}")]
    ZeroBound(f64),

    #[error("no window [x0, {limit}] on which the Chebyshev bounds hold")]
    NoWindow { limit: u64 },
}
