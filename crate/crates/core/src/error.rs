use thiserror::Error;

/// Everything that can go wrong while building fields or counting.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field size {p}^{r} exceeds the cap of {cap}")]
    FieldTooLarge { p: u64, r: u32, cap: u64 },
    #[error("element encoding {value} is out of range for q = {q}")]
    InvalidElement { value: u64, q: u32 },
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("index m = {m} does not divide q - 1 = {order}")]
    IndexDoesNotDivide { m: u32, order: u32 },
    #[error("k = {k} is out of range (allowed 0..={max})")]
    KOutOfRange { k: usize, max: usize },
    #[error("{what} needs {needed} units but the budget allows {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: f64,
        cap: u64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: N_H(k, b) = {value} is not divisible by {k}!")]
    NotDivisible { k: usize, value: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("invalid budget specification: {0}")]
    InvalidBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
