use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("empty or single-vertex complex")]
    Degenerate,
    #[error("expected a complex of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("{0} is not a face of the complex")]
    FaceNotPresent(String),
    #[error("vertex {0} is not used by any facet")]
    UnusedVertex(u8),
    #[error("ridge {0} lies in three or more facets")]
    RidgeOverused(String),
    #[error("complex is not a closed pseudomanifold")]
    NotPseudomanifold,
    #[error("input is not a 3-sphere")]
    NotASphere,
    #[error("input is not a ball")]
    NotABall,
    #[error("operation needs at least two facets")]
    SingleFacet,
    #[error("vertex count {0} out of range")]
    OutOfRange(usize),
    #[error("link catalog missing or incomplete")]
    MissingCatalog,
    #[error("no sphere census for {0} vertices")]
    MissingCensus(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}
