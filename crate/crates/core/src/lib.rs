//! Exact rational coefficients relating Gamma-function derivatives on integer
//! and shifted lattices to a small basis of derivatives, the structured
//! determinants that make those systems invertible, a high-precision Gamma
//! oracle, and closed-form density bounds.

pub mod cli;
pub mod coeffs;
pub mod density;
pub mod error;
pub mod gammanum;
pub mod linalg;
pub mod rational;
pub mod sympoly;

pub use error::{Error, Result};
