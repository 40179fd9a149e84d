//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the workbench.
///
/// The variants are coarse on purpose: callers mostly want to know which
/// family of failure happened (bad input shape, bad parameter, a guard that
/// tripped) and the message carries the specifics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("size guard exceeded: {0}")]
    Size(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("infeasible guess: {0}")]
    InfeasibleGuess(String),
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("estimator failure: {0}")]
    Estimator(String),
    #[error("inconsistent decision: {0}")]
    InconsistentDecision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
