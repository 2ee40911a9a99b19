use thiserror::Error;

/// Everything that can go wrong in this crate. Domain-negative answers
/// (e.g. "no such module exists") are ordinary return values, not errors;
/// these variants are for inputs outside a function's contract or for
/// resource limits.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow while computing {op}")]
    Overflow { op: &'static str },

    #[error("arrow count n = {n} not supported here: {reason}")]
    UnsupportedArrowCount { n: u32, reason: &'static str },

    #[error("({x}, {y}) is not a positive imaginary root for n = {n}")]
    NotPositiveImaginaryRoot { n: u32, x: i64, y: i64 },

    #[error("invalid dimension pair: {0}")]
    InvalidDimensions(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid label permutation: {0}")]
    InvalidPermutation(String),

    #[error("total dimension {requested} exceeds enumeration budget {budget}")]
    BudgetExceeded { requested: i64, budget: i64 },

    #[error("unrecognized field: {0} (use f<p> or q)")]
    UnrecognizedField(String),

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} too large (must be <= 65536)")]
    PrimeTooLarge(u64),

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("malformed subtree: {0}")]
    MalformedSubtree(String),
}

pub type Result<T> = std::result::Result<T, Error>;
