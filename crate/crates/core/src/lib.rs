//! Simulation and numerical verification of limit laws for occupation times
//! of symmetric α-stable processes.
//!
//! - [`stable_sim`]: increments, paths on fixed or path-adaptive grids, empirical CFs.
//! - [`constants`]: test functions, Fourier transforms and the analytic constants.
//! - [`limit`]: the exponential and mixed-Gaussian limit laws.
//! - [`functional`]: normalized occupation functionals and a local-time estimator.
//! - [`oracle`]: quadrature oracles for the integral lemmas and second-moment limits.
//! - [`harness`]: config-driven experiments, statistics and reports.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod functional;
pub mod harness;
pub mod limit;
pub mod oracle;
pub mod parallel;
pub mod quadrature;
pub mod special;
pub mod stable_sim;

pub use error::{Error, Result};
