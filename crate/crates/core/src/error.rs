use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge {edge:?} has {found} vertices, expected {rank}")]
    WrongEdgeSize { edge: Vec<usize>, rank: usize, found: usize },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertexInEdge { edge: Vec<usize> },
    #[error("invalid rank {0}")]
    InvalidRank(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("link graph needs rank >= 3, got {0} (use `neighbors` for graphs)")]
    RankTooSmall(usize),
    #[error("vertex {vertex} is not in edge {edge:?}")]
    VertexNotInEdge { vertex: usize, edge: Vec<usize> },
    #[error("target vertex {vertex} already lies in edge {edge:?}")]
    TargetAlreadyInEdge { vertex: usize, edge: Vec<usize> },
    #[error("edge {0:?} not found")]
    EdgeNotFound(Vec<usize>),
    #[error("moving edges would create the multiple edge {0:?}")]
    WouldCreateMultipleEdge(Vec<usize>),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("negative input {0}")]
    NegativeInput(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shadow bound not applicable to an empty family")]
    NotApplicable,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("spectral solution did not converge")]
    NotConverged,
    #[error("hypergraph is not connected ({0} non-trivial components)")]
    NotConnected(usize),
    #[error("labeling is not subnormal")]
    NotSubnormal,
    #[error("degree {degree} of the combining vertex is below f_r(e) = {bound}")]
    DegreeTooSmall { degree: usize, bound: f64 },
    #[error("link labeling is not normal: {0}")]
    LinkNotNormal(String),
    #[error("base labeling is not normal: {0}")]
    BaseNotNormal(String),
    #[error("shadow of the vertex-deleted hypergraph is not contained in the link")]
    ShadowNotInLink,
    #[error("x + y = {0} exceeds 1")]
    WeightOverflow(f64),

    #[error("search space too large: {count} candidates exceed cap {cap}")]
    SpaceTooLarge { count: u128, cap: u128 },
    #[error("bound audit failed: {0}")]
    TheoremViolation(String),
}
