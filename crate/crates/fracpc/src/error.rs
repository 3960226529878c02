//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent grid or solver configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called with arguments that violate its contract
    /// (missing history, incompatible kernel/index combination, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A weight or state overflowed the finite range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The trajectory left the finite/bounded regime. Carries the grid
    /// index of the first offending state.
    #[error("divergence at step {step}: {detail}")]
    Divergence { step: usize, detail: String },

    /// Lookup of a named entity (problem, scheme) failed.
    #[error("unknown {kind} '{name}'; valid choices: {valid}")]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
