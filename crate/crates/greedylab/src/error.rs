//! Error type shared across the crate.
//!
//! Every fallible operation returns [`Error`]; the CLI maps variants onto
//! process exit codes (usage problems → 2, I/O and parse problems → 3).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector had the wrong length for the space or basis it was used with.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An index set referenced a coordinate outside `1..=dim`.
    #[error("index {index} out of range for dimension {dim} (indices are 1-based)")]
    IndexOutOfRange { index: usize, dim: usize },

    /// A sign assignment did not line up with its index set.
    #[error("sign/set mismatch: {0}")]
    SignSetMismatch(String),

    /// The change-of-basis matrix is exactly singular.
    #[error("singular matrix: basis columns are linearly dependent")]
    SingularMatrix,

    /// The change-of-basis matrix is numerically too close to singular.
    #[error("ill-conditioned matrix: condition estimate {cond:.3e} exceeds 1e10")]
    IllConditioned { cond: f64 },

    /// A threshold level is not a multiple of 1/m on the active grid.
    #[error("level {level} is not on the 1/{m} grid; pick a multiple of 1/{m} in (0,1]")]
    OffGridLevel { level: String, m: i64 },

    /// A rational or level string could not be parsed.
    #[error("cannot parse rational '{0}': expected 'k' or 'k/m' with m > 0")]
    BadRational(String),

    /// A level outside (0,1] was requested.
    #[error("level {0} outside (0,1]")]
    LevelOutOfRange(String),

    /// An operation that needs a nonempty index set received the empty set.
    #[error("empty index set: {0}")]
    EmptySet(&'static str),

    /// The search budget was zero.
    #[error("zero search budget")]
    ZeroBudget,

    /// Construction parameters for a space or grid were invalid.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A named quantity is not one of the supported estimation targets.
    #[error("unknown quantity '{0}' (expected phi|theta|lambda|rho|gamma|Lambda|succ|qglc-v)")]
    UnknownQuantity(String),

    /// A catalog lookup failed.
    #[error("unknown basis id '{0}'")]
    UnknownBasis(String),

    /// Two catalog entries share an id.
    #[error("duplicate catalog id '{0}'")]
    DuplicateId(String),

    /// A catalog entry parsed but failed validation.
    #[error("catalog entry '{id}' invalid: {reason}")]
    Validation { id: String, reason: String },

    /// A file parsed as the wrong shape.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    /// Check inputs were produced on different grids or bases.
    #[error("incomparable inputs: {0}")]
    IncomparableInputs(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
