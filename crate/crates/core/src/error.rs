use thiserror::Error;

use crate::face::Face;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined on the void complex")]
    VoidInput,
    #[error("{0} is not a face of the complex")]
    InvalidFace(Face),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("vertex count {0} exceeds the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("invalid squarefree module: {0}")]
    InvalidModule(String),
    #[error("module dimension is undefined for the zero module")]
    ZeroModule,
    #[error("operation requires a Cohen-Macaulay module")]
    RequiresCm,
    #[error("exhaustive enumeration supports at most 5 vertices, got {0}")]
    TooLargeForExhaustive(usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid simplicial poset: {0}")]
    InvalidPoset(#[from] PosetError),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

/// The first violated invariant found while validating raw poset data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relation contains a cycle")]
    Cyclic,
    #[error("multiple minimal elements: {0:?}")]
    MultipleMinimal(Vec<String>),
    #[error("designated bottom `{0}` is not the unique minimal element")]
    BottomNotMinimal(String),
    #[error("rank mismatch at `{0}`")]
    RankMismatch(String),
    #[error("interval below `{0}` is not a boolean algebra")]
    NonBooleanInterval(String),
}
