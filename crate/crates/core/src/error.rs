use thiserror::Error;

use crate::report::Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("arity mismatch: cochain takes {expected} arguments, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("coboundary is implemented for arity 1..=3, got {0}")]
    UnsupportedArity(usize),

    #[error("axis {axis} out of range for dimension {dimension}")]
    Axis { axis: usize, dimension: usize },

    #[error("invalid input: {0}")]
    Input(String),

    /// The object failed one of the algebraic validators; the report carries
    /// the offending residuals.
    #[error("validation failed: {0}")]
    Validation(Box<Report>),

    #[error("numeric range exceeded: {0}")]
    Range(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }
}
