use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("schema mismatch: expected `{expected}`, found `{found}`")]
    Schema { expected: String, found: String },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("datum failed validation: {0}")]
    Unvalidated(String),

    #[error("d1 convention violated at (i, j) = ({i}, {j}): {message}")]
    ConventionViolation { i: i64, j: i64, message: String },

    #[error("instance inconsistency: {0}")]
    InstanceInconsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid Betti profile: {0}")]
    InvalidProfile(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
