use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("column `{column}` contains a non-finite value at row {row}")]
    NonFinite { column: String, row: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: model expects {expected} features, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("not enough samples: need at least {needed}, got {actual}")]
    TooFewSamples { needed: usize, actual: usize },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("unknown report format `{0}`")]
    UnknownFormat(String),

    #[error("singular design: {0}")]
    Singular(String),

    #[error("{file}:{line}: {message}")]
    Ingest {
        file: String,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
