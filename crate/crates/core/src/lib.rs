//! Generalized Rankin–Cohen brackets on Euclidean Jordan algebras: exact
//! construction of the bracket polynomials and numerical verification of
//! their identities.

pub mod analytic;
pub mod bracket;
pub mod cli;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod suites;
pub mod symbolic;
pub mod tables;

pub use error::{Error, Result};
