use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Evaluation point is within the guard distance of a pole.
    #[error("pole at {location}: argument within {distance:.3e} of it")]
    PoleProximity { location: String, distance: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Argument lies outside the domain the routine is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or series failed to reach its tolerance.
    #[error(
        "nonconvergence in {what}: error estimate {estimate:.3e} above tolerance {tolerance:.3e}"
    )]
    Nonconvergence {
        what: String,
        estimate: f64,
        tolerance: f64,
    },

    /// Series evaluated outside its region of convergence.
    #[error("divergent region: {0}")]
    DivergentRegion(String),

    /// Dataset record is missing a required field.
    #[error("record {record}: missing or invalid field `{field}`")]
    MissingField { record: usize, field: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn pole(location: impl Into<String>, distance: f64) -> Self {
        Error::PoleProximity {
            location: location.into(),
            distance,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
