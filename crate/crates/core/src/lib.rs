//! Linear criteria for BCS critical temperatures of one- and few-dimensional
//! fermion gases with pair interactions.
//!
//! The crate evaluates the pair kernels `K_T`, `B_T`, `N_T`, integrates them
//! across the Fermi surface, computes Birman–Schwinger spectra at fixed total
//! momentum, solves the resulting temperature equations and checks a set of
//! quantitative bounds numerically.

pub mod bound_verifier;
pub mod bs_spectra;
pub mod cli;
pub mod critical_temps;
pub mod error;
pub mod interactions;
pub mod kernels;
pub mod quadrature;

pub use error::{Error, Result};

/// Schema tag written into every JSON and CSV output.
pub const VERSION: &str = "bcs-tc-lab/1";
