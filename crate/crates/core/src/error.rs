//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LoganError {
    /// The Hankel order is below the admissible range.
    #[error("invalid order alpha = {0}: the Hankel order must satisfy alpha >= -1/2")]
    InvalidOrder(f64),
    /// An argument falls outside the domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A zero of a Bessel function could not be bracketed.
    #[error("zero search failed: {0}")]
    ZeroSearch(String),
    /// A profile is not integrable against the measure.
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    /// A weight, coefficient or eigenvalue has the wrong sign.
    #[error("sign violation: {0}")]
    SignViolation(String),
    /// A numerical procedure did not reach its target accuracy.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// A derivative landed in the tolerance dead-band.
    #[error("ambiguous multiplicity: {0}")]
    Ambiguous(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, LoganError>;
