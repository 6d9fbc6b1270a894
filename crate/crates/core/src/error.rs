use thiserror::Error;

/// Errors raised by the library.
///
/// Axiom violations of a well-shaped fusion ring are *not* errors: they are
/// returned as an [`AxiomReport`](crate::ring::AxiomReport).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("power iteration did not converge after {iterations} iterations (last delta {delta:e})")]
    NoConvergence { iterations: usize, delta: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("not handled here: {0}")]
    Redirect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
