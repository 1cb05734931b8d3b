use thiserror::Error;

/// Errors shared across the crate.
///
/// Numerical routines in this crate are partial in a controlled way: every
/// geometric operation that divides by a determinant or takes a logarithm
/// states its domain, and violations surface here instead of as NaNs deep in
/// a chain computation.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside an operation's stated domain (zero vector,
    /// log of zero, shape in {0, 1}, ...).
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Two decorations project to the same ideal point where distinct points
    /// were required (vanishing determinant pairing).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A matrix failed its defining invariant (det ≠ 1, not symmetric, ...).
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// An edge labeling failed validation (wrong subgroup shape, face
    /// products off identity, inconsistent determinants).
    #[error("invalid edge labeling: {0}")]
    InvalidLabeling(String),

    /// A flattening triple could not be matched to any shape parameter
    /// (log parameters are not of the form Log z + pπi, −Log(1−z) + qπi).
    #[error("unrecognized flattening: {0}")]
    BadFlattening(String),

    /// Input file could not be parsed or failed semantic validation.
    #[error("parse error: {0}")]
    Parse(String),

    /// A cross-check between two independently computed quantities failed
    /// (e.g. Im L̂ against the Bloch–Wigner sum).
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
