//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the arithmetic, character, and moment layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("p not prime: {0}")]
    NotPrime(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("the zero polynomial has no degree")]
    ZeroDegree,
    #[error("expected a polynomial of degree >= 1, got {0}")]
    NotPositiveDegree(String),
    #[error("modulus must be monic irreducible, got {0}")]
    ReducibleModulus(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
