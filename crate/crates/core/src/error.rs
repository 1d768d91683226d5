use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} is outside [0, 1]")]
    Domain { value: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("index {index} out of range for universe of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("universe mismatch: expected {expected} elements, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate measure: reference set has zero cardinality")]
    DegenerateMeasure,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("{path}: row {row}, column {column}: {message}")]
    Ingestion {
        path: String,
        row: usize,
        column: String,
        message: String,
    },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn check_unit(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain { value })
    }
}
