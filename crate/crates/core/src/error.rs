use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative discriminant under the square root")]
    NegativeDiscriminant,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operands live in different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    MixedRadicand(String, String),
    #[error("continued fraction term at index {index} is {value}; terms after a0 must be >= 1")]
    InvalidTerm { index: usize, value: String },
    #[error("an explicit continued fraction needs at least the integer part a0")]
    EmptyExpansion,
    #[error("term stream exhausted before index {0}")]
    InsufficientTerms(usize),
    #[error("the expansion ends at index {0}; no tail exists beyond it")]
    NoTail(usize),
    #[error("comparison undecided after {0} terms")]
    Undecided(usize),
    #[error("an exact (rational or quadratic) value is required")]
    ExactnessRequired,
    #[error("value is rational, not a quadratic irrational")]
    NotQuadratic,
    #[error("theta has only finitely many best lower approximations of the 3rd kind")]
    NoLimitStructure,
    #[error("floor of m*theta cannot be decided from the available enclosure (m = {0})")]
    FloorUndecided(BigInt),
    #[error("threshold comparison undecided at {0} bits of precision")]
    BoundaryUndecided(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
