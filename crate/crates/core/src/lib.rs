//! Workbench for the regular multivariate quadratic problem over GF(2).
//!
//! A regular vector of length `n = l*w` has exactly one set bit in each of its
//! `w` consecutive windows of length `l`. The crate generates quadratic systems
//! with a planted regular solution and attacks them several ways: exhaustive
//! search, XL linearization on the quadratic modeling (optionally after
//! guessing), the probabilistic polynomial method, and a degree-`2 log l`
//! re-encoding. The [`estimator`] module evaluates the asymptotic cost of each
//! attack.

pub mod algebra;
pub mod altmodel;
pub mod error;
pub mod estimator;
pub mod instance;
pub mod modeling;
pub mod polymethod;
pub mod rng;

pub use error::{Error, Result};

/// First line of every CSV the workbench writes; bump when a schema changes.
pub const CSV_VERSION_LINE: &str = "# rmq-lab v1";
