use thiserror::Error;

/// Crate-wide error type.
///
/// Validation and parse problems map to CLI exit code 1, numerical failures
/// to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error("unknown preset `{id}`; valid ids: {valid}")]
    UnknownPreset { id: String, valid: String },

    #[error("parameter ranges are empty")]
    EmptyRanges,

    #[error("step size {dt} too large: {quantity} loss fraction {fraction} exceeds 1")]
    StepSizeViolation {
        quantity: &'static str,
        fraction: f64,
        dt: f64,
    },

    #[error("non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("draw {index} failed: {source}")]
    DrawFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sweep cell (axis1 = {axis1}, axis2 = {axis2}) failed: {source}")]
    CellFailed {
        axis1: f64,
        axis2: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the CLI: 1 for validation/parse errors, 2 for
    /// numerical failures. Wrapper variants defer to their cause.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::StepSizeViolation { .. } | Error::NonFiniteState { .. } => 2,
            Error::DrawFailed { source, .. } | Error::CellFailed { source, .. } => {
                source.exit_code()
            }
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks that `value` is finite and nonnegative, naming `field` on failure.
pub(crate) fn ensure_nonneg(field: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::validation(field, "must be finite"));
    }
    if value < 0.0 {
        return Err(Error::validation(field, "must be nonnegative"));
    }
    Ok(())
}

/// Checks that `value` is finite and strictly positive.
pub(crate) fn ensure_positive(field: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::validation(field, "must be finite"));
    }
    if value <= 0.0 {
        return Err(Error::validation(field, "must be positive"));
    }
    Ok(())
}
