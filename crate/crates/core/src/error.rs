use thiserror::Error;

/// Errors produced by the transform and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("fast path requires a power-of-two grid size, got n = {0}")]
    NotPowerOfTwo(usize),

    #[error("density is not normalized: total mass {0}")]
    Unnormalized(f64),

    #[error("signal or field is identically zero")]
    ZeroField,

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
