use thiserror::Error;

use crate::digraph::Vertex;
use crate::oracle::SearchStats;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(Vertex),
    #[error("duplicate arc ({0}, {1}) in simple digraph")]
    DuplicateArcInSimpleDigraph(Vertex, Vertex),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(Vertex, usize),
    #[error("arc ({0}, {1}) absent")]
    ArcAbsent(Vertex, Vertex),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("inconsistent header: {0}")]
    InconsistentHeader(String),
    #[error("need at least 2 vertices")]
    TooFewVertices,
    #[error("digraph too large for exact search (n = {0}, limit {1})")]
    TooLarge(usize, usize),
    #[error("digraph too small (n = {0}, need {1})")]
    TooSmall(usize, usize),
    #[error("digraph is not strong")]
    NotStrong,
    #[error("digraph is not semicomplete")]
    NotSemicomplete,
    #[error("no cycle of the requested length exists")]
    NoSuchCycle,
    #[error("root {0} cannot reach every vertex")]
    RootCannotReachAll(Vertex),
    #[error("search budget exceeded after {} branchings", .0.branchings)]
    BudgetExceeded(SearchStats),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown claim id: {0}")]
    UnknownClaim(String),
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("internal solver defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
