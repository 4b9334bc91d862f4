//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}:{line}: malformed record: {message}")]
    MalformedRecord {
        path: String,
        line: usize,
        message: String,
    },

    #[error("duplicate document id `{id}`")]
    DuplicateId { id: String },

    #[error("invalid document `{id}`: {message}")]
    InvalidDocument { id: String, message: String },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("signatures are incomparable: {0}")]
    IncomparableSignatures(String),

    #[error("balance target for unknown group `{0}`")]
    UnknownGroup(String),

    #[error("group `{0}` has zero bytes but a nonzero target")]
    ZeroByteGroup(String),

    #[error("corpus too small to fill the requested vocabulary: got {actual} of {requested} tokens")]
    VocabUnderfilled { requested: usize, actual: usize },

    #[error("embedding matrix error: {0}")]
    Matrix(String),

    #[error("prediction set mismatch: {0}")]
    PredictionMismatch(String),

    #[error("sequence length mismatch for `{doc_id}`: gold {gold} vs pred {pred}")]
    LengthMismatch {
        doc_id: String,
        gold: usize,
        pred: usize,
    },

    #[error("document id sets differ: {0}")]
    DocSetMismatch(String),

    #[error("invalid tag `{tag}` in `{doc_id}`")]
    InvalidTag { doc_id: String, tag: String },

    #[error("window error: {0}")]
    Window(String),

    #[error("masking error: {0}")]
    Masking(String),
}
