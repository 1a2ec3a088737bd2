//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures raised by the arithmetic pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is reducible over Q: {0}")]
    ReduciblePolynomial(String),
    #[error("polynomial must be monic with integer coefficients and degree >= 1")]
    InvalidPolynomial,
    #[error("insufficient p-adic precision: {0}")]
    InsufficientPrecision(String),
    #[error("element is not a unit")]
    NonUnit,
    #[error("quotient is not integral")]
    NotIntegral,
    #[error("precision search exceeded the gross cap at m = {m}")]
    GrossCapExceeded { m: u32 },
    #[error("unconditional bound {bound} exceeds the configured budget {budget}; rerun with --grh")]
    BoundTooLarge { bound: u64, budget: u64 },
    #[error("could not factor {0}")]
    FactorisationFailed(String),
    #[error("class group certification failed: {0}")]
    Certification(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
