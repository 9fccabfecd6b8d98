//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two objects were built on different grids; mixing them is never
    /// meaningful because dual spacings would disagree.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A precondition on an argument failed (non-even n, τ outside [0,1],
    /// empty mixture, non-orthonormal states, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Mass at the edge of the grid is too large for the periodic transforms
    /// to be trusted. Carries the edge/max ratio that tripped the check.
    #[error("boundary mass {ratio:.3e} exceeds {limit:.1e} of the peak; enlarge the window")]
    BoundaryMass { ratio: f64, limit: f64 },

    /// Symbolic operations refuse total degree above the cap to bound memory.
    #[error("total degree {0} exceeds the cap of {1}")]
    DegreeCap(u32, u32),

    /// The pretty-printed operator grammar could not be parsed.
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
