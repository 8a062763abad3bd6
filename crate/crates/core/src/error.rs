//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by constructors, basis generators and solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter record violates an invariant (negative coupling, N = 0, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Basis index out of its valid range.
    #[error("index out of range: {0}")]
    IndexRange(String),

    /// Case the construction deliberately does not cover.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// A caller or an internal step violated a stated contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Parameters too close to a degeneracy for the requested branch.
    #[error("degenerate parameters: {0}")]
    Degeneracy(String),

    /// Problem size above a hard cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
