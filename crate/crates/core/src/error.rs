use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("graph on {vertex_count} vertices has no edges")]
    EmptyEdgeList { vertex_count: usize },
    #[error(
        "edge {edge} references vertex {vertex}, but the graph has only {vertex_count} vertices"
    )]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("edge {edge} is not a chord of this partition")]
    NotAChord { edge: usize },
    #[error("edge {edge} is not a branch of this partition")]
    NotABranch { edge: usize },
    #[error("dual domain requires non-negative couplings (got {coupling})")]
    NonFerromagneticDual { coupling: f64 },
    #[error("{what} would enumerate 2^{bits} configurations (limit 2^{limit})")]
    TooLarge {
        what: &'static str,
        bits: usize,
        limit: usize,
    },
    #[error("graph is not a single cycle through every vertex")]
    NotACycleGraph,
    #[error("assignment violates cycle parity and cannot be lifted to spins")]
    InconsistentAssignment,
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: coupling is not finite")]
    NonFiniteCoupling { line: usize },
    #[error("expected {expected} couplings (one per edge), got {got}")]
    CouplingCountMismatch { expected: usize, got: usize },
    #[error("coupling for edge {edge} is not finite")]
    InvalidCoupling { edge: usize },
    #[error("{what}: need at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
