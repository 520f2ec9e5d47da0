use thiserror::Error as ThisError;

/// Failures raised by the workbench.
#[derive(Debug, ThisError)]
pub enum Error {
    /// An operation left its mathematical domain (non-invertible, non-monomial
    /// Laurent substitution, zero leading coefficient, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A form handed to a homotopy operator was not closed.
    #[error("input is not closed: {0}")]
    NotClosed(String),
    /// A precondition on supplied data failed (for example ∂ξ ≠ WZ).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A state exceeded the configured weight cap.
    #[error("weight overflow: {0}")]
    Overflow(String),
    /// Bidegrees or dimensions do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Malformed scenario or Chern data.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// Structurally valid input that references something undefined.
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for the CLI: 3 for weight overflow, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow(_) => 3,
            _ => 2,
        }
    }
}
