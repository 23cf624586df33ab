use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element id {id} out of range (ground set has {len} elements)")]
    ElementOutOfRange { id: usize, len: usize },

    #[error("set id {id} out of range (family has {len} sets)")]
    SetOutOfRange { id: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("order is not a permutation of the ground set: {0}")]
    NotAPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("instance too large: {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("linearity cap exceeded: no successful run up to c = {cap}")]
    LinearityCapExceeded { cap: f64 },

    #[error("reconstruction invariant violated: {0}")]
    Reconstruction(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not a neighborhood set system: {0}")]
    NotAGraph(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
