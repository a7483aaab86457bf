//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation, linear algebra and family constructors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:.3e} (tolerance {tol:.1e})")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
        tol: f64,
    },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eig:.3e} (tolerance {tol:.1e})")]
    NotPsd { min_eig: f64, tol: f64 },

    #[error("trace is {trace:.12}, expected {expected} within {tol:.1e}")]
    BadTrace {
        trace: f64,
        expected: f64,
        tol: f64,
    },

    #[error("invalid probability vector: {0}")]
    BadProbability(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("operator is not faithful: minimum eigenvalue {min_eig:.3e} below {tol:.1e}")]
    NotFaithful { min_eig: f64, tol: f64 },

    #[error("parameter {value} outside domain {domain} for family {family}")]
    OutOfDomain {
        family: &'static str,
        value: f64,
        domain: String,
    },

    #[error("unsupported dimension {d}: {reason}")]
    BadDimension { d: usize, reason: String },

    #[error("marginals differ by {deviation:.3e} (tolerance {tol:.1e}); D-comparison requires equal marginals")]
    MarginalMismatch { deviation: f64, tol: f64 },

    #[error("invalid measurement: {0}")]
    BadMeasurement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid state file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
