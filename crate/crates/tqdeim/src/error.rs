use thiserror::Error;

/// Crate-wide error type.
///
/// Variants group into usage/configuration problems, I/O and format
/// problems, and numerical failures; the CLI maps these groups onto
/// distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("duplicate index {0} in index set")]
    DuplicateIndex(usize),

    #[error("rank {rank} out of range 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("Fourier frontal slice {slice} is singular (1-based)")]
    SingularSlice { slice: usize },

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e} after inverse transform")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("solver instability: {0}")]
    Stability(String),

    #[error("solver divergence: {0}")]
    Divergence(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("inconsistent model bundle: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
