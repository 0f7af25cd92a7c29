use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch, expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("entry ({row}, {col}) out of bounds for {nrows}x{ncols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{op}: matrix is not symmetric")]
    NotSymmetric { op: &'static str },
    #[error("matrix of order {order} exceeds the limit of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("{op}: directed graphs are not supported")]
    Directed { op: &'static str },
    #[error("{op}: operands disagree on the undirected flag")]
    FlagMismatch { op: &'static str },
    #[error("zero diagonal entry in row {row}")]
    ZeroDiagonal { row: usize },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("invalid lineage: {0}")]
    InvalidLineage(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
