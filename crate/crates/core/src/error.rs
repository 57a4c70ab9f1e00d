use thiserror::Error;

/// Errors produced by the computational modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument or field fails its contract.
    #[error("invalid `{field}`: {message}")]
    InvalidInput { field: &'static str, message: String },

    /// The time grid is too coarse to resolve the drive.
    #[error(
        "grid spacing {spacing:.6e} under-resolves the drive; required spacing <= {required:.6e}"
    )]
    UnderResolvedGrid { spacing: f64, required: f64 },

    /// A projection window that is not a whole number of drive periods.
    #[error(
        "series duration {duration:.6e} is not a whole number of drive periods (period {period:.6e})"
    )]
    InvalidWindow { duration: f64, period: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
