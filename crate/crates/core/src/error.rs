use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field error: {0}")]
    Field(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown builtin identity `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown variety `{0}`")]
    UnknownVariety(String),
    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),
    #[error("unassigned variable `{0}`")]
    Unassigned(String),
    #[error("multidegree mismatch: {0}")]
    Multidegree(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("subspaces belong to different slices")]
    SliceMismatch,
    #[error("parameter error: {0}")]
    Params(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
