//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A matrix failed the hermiticity check; payload is the largest
    /// entrywise deviation from the adjoint.
    #[error("not hermitian: max |m - m†| entry is {0:.3e}")]
    NotHermitian(f64),

    /// A matrix failed positive semidefiniteness; payload is the magnitude
    /// of the most negative eigenvalue.
    #[error("not positive semidefinite: eigenvalue below zero by {0:.3e}")]
    NotPositive(f64),

    /// Trace (or probability sum) deviates from 1 by the payload.
    #[error("trace differs from one by {0:.3e}")]
    TraceNotOne(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("dimension cap exceeded: {got} > {cap}")]
    DimensionCap { got: usize, cap: usize },

    #[error("invalid spectrum: {0}")]
    BadSpectrum(String),

    /// A compatibility precondition does not hold; the query is a valid
    /// negative answer, not a malfunction.
    #[error("membership violated: {0}")]
    Membership(String),

    /// A witness was assembled but failed its own verification.
    #[error("witness construction failed: {0}")]
    Construction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
