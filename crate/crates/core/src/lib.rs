//! Extremal bandlimited functions for the Hankel transform.

pub mod bessel;
pub mod cli;
pub mod eigenpoly;
pub mod error;
pub mod extremal;
pub mod gamma;
pub mod hankel;
pub mod jacobi_limit;
pub mod quad;
pub mod quadrature;
pub mod tails;

pub use error::{LoganError, Result};
