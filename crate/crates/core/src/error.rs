use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("hyperedge {index} has fewer than two distinct vertices")]
    SingletonHyperedge { index: usize },
    #[error("hyperedge {index} duplicates an earlier hyperedge")]
    DuplicateHyperedge { index: usize },
    #[error("cut side must be non-empty and proper")]
    EmptySide,
    #[error("vertex {0} is not in the given set")]
    VertexNotInSet(usize),
    #[error("inner set is not contained in the outer set")]
    NotNested,
    #[error("partition blocks overlap at vertex {0}")]
    OverlappingBlocks(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header announces {expected} hyperedges but {found} were read")]
    CountMismatch { expected: usize, found: usize },
    #[error("instance too large for exhaustive search: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("a set with fewer than two vertices has no split")]
    NoSplit,
    #[error("need at least two vertices")]
    TooSmall,
    #[error("certificate parameter k must be positive")]
    BadK,
    #[error("conductance target {0} out of range")]
    BadPhi(f64),
    #[error("node set is not a proper directed cut")]
    InvalidDirectedCut,
    #[error("invalid separator: {0}")]
    InvalidSeparator(&'static str),
    #[error("source and sink are joined through infinite-weight nodes")]
    Unbounded,
    #[error("no trial produced a cut")]
    NoCutFound,
    #[error("size bound s = {s} outside [1, {limit}]")]
    BadS { s: usize, limit: usize },
    #[error("infeasible generator request: {0}")]
    Infeasible(String),
    #[error("n must be even, got {0}")]
    OddN(usize),
    #[error("n = {0} is not a perfect square")]
    NotSquare(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
