use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires an undirected graph")]
    DirectedInput,

    #[error("operation requires a directed graph")]
    UndirectedInput,

    #[error("input is not a tree")]
    NotATree,

    #[error("graph is not planar")]
    NonPlanar { witness: Option<Box<Graph>> },

    #[error("inconsistent reduction log at step {step}: {message}")]
    InconsistentLog { step: usize, message: String },

    #[error("invalid edit: {0}")]
    InvalidEdit(String),

    #[error("reduction did not reach a planar graph")]
    ReductionFailed,

    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
