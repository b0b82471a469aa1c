use thiserror::Error;

/// Errors across the library. The CLI maps these onto exit codes:
/// invalid parameters -> 2, hypothesis violations -> 3, verification
/// failures -> 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A theorem's hypotheses do not hold for the requested inputs. These are
    /// hard errors: extrapolating a conditional bound would fabricate claims.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    /// Exhaustive enumeration or mesh size beyond the practical cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
