use thiserror::Error;

/// Errors raised by construction, parsing and search routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex count {0} exceeds the supported maximum of {max}", max = crate::digraph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("digraph must have at least one vertex")]
    EmptyDigraph,

    #[error("arc ({tail}, {head}) is a self-loop")]
    SelfLoop { tail: usize, head: usize },

    #[error("arc ({tail}, {head}) has an endpoint outside 0..{n}")]
    ArcOutOfRange { tail: usize, head: usize, n: usize },

    #[error("duplicate arc ({tail}, {head})")]
    DuplicateArc { tail: usize, head: usize },

    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid circulant: {0}")]
    InvalidCirculant(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("out of domain: {0}")]
    Domain(String),

    #[error("enumerating tournaments on {n} vertices requires 2^{pairs} = {count} orientations; cap is {cap} vertices")]
    EnumerationTooLarge {
        n: usize,
        pairs: usize,
        count: u128,
        cap: usize,
    },

    #[error("rc undefined for non-strong digraph")]
    NotStrong,

    #[error("solver cap exceeded: {0}")]
    SolverCap(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
