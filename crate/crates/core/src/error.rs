use thiserror::Error;

/// Errors raised while building graphs, doing algebra over them, or
/// verifying bases.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge}: tail level {tail_level} must be one more than head level {head_level}")]
    LevelMismatch {
        edge: String,
        tail_level: u32,
        head_level: u32,
    },
    #[error("expected exactly one vertex of level 0, found {count}")]
    NoUniqueMin { count: usize },
    #[error("vertex {vertex} has positive level but no outgoing edge")]
    DeadVertex { vertex: String },
    #[error("chosen edge {edge} for vertex {vertex} is not an outgoing edge of that vertex")]
    BadChosen { vertex: String, edge: String },
    #[error("{context} refers to undeclared {kind} {id}")]
    DanglingRef {
        context: String,
        kind: &'static str,
        id: String,
    },
    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("multiplicity {mult} out of range for vertex {vertex} of level {level}")]
    BadMultiplicity { vertex: String, mult: u32, level: u32 },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("operands belong to different graphs")]
    MixedGraph,
    #[error("({v}, {k}) is not composable down to {u}")]
    NotComposable { v: String, u: String, k: u32 },
    #[error("sequence is not in the basis: adjacent pairs at position {position} are composable")]
    NotBasis { position: usize },
    #[error("{family} parameters out of range: {detail}")]
    LimitExceeded { family: &'static str, detail: String },
    #[error("degree {degree}: {what} count {count} exceeds limit {limit}")]
    BoundTooLarge {
        degree: u32,
        what: &'static str,
        count: usize,
        limit: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol {name} at offset {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
