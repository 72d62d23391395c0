use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph would have {n} vertices, the cap is {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("invalid pair ({u},{v}) for a graph on {n} vertices")]
    BadPair { u: usize, v: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} appears twice")]
    DuplicateVertex(usize),
    #[error("vertex lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} is outside the printable graph6 range")]
    InvalidByte(u8),
    #[error("graph has {0} vertices, at most 64 are supported")]
    TooLarge(usize),
    #[error("adjacency body is truncated")]
    Truncated,
    #[error("unexpected trailing bytes")]
    TrailingGarbage,
    #[error("padding bits are not zero")]
    NonzeroPadding,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

/// Crate-wide error for operations that can fail in more than one layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("invalid rational {0:?}")]
    Rational(String),
    #[error("oracle kind mismatch: {0}")]
    OracleKind(String),
    #[error("empty graph has no classification")]
    EmptyGraph,
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
}
