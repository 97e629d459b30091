use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not an orthogonal projection")]
    NotProjection,

    #[error("projections do not commute (residual {residual:.3e})")]
    NonCommuting { residual: f64 },

    #[error("{what} failed verification:\n{report}")]
    VerificationFailed { what: String, report: CheckReport },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dims(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(msg()))
    }
}
