use thiserror::Error;

/// Errors surfaced by the ensemble, transform and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Peirce constant beta={0}, expected 1, 2 or 4")]
    InvalidBeta(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("family `{0}` has no exact sampler; it is verified analytically")]
    UnsupportedSampler(String),

    #[error("operation `{op}` is not available for family `{family}` at n={n}")]
    Unsupported {
        op: &'static str,
        family: String,
        n: usize,
    },

    #[error("evaluation point is outside the transform domain: {0}")]
    OutOfDomain(String),

    #[error("eigenvalue solver failed to converge")]
    EigenFailure,

    #[error("series did not reach the requested tolerance (last term {last_term:e})")]
    SeriesDiverged { last_term: f64 },

    #[error("empty sample batch")]
    EmptyBatch,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
