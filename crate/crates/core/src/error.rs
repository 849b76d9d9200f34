use thiserror::Error;

use crate::graph::VertexId;
use crate::multichain::ChainViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("graph is disconnected: vertex {0} is not reachable from the root")]
    Disconnected(VertexId),
    #[error("invalid layering: {0}")]
    InvalidLayering(String),
    #[error("layer {layer} is not bipartite: odd cycle through vertex {vertex}")]
    OddCycle { layer: usize, vertex: VertexId },
    #[error("ordering is not multi-chain: {0}")]
    NotMultiChain(ChainViolation),
    #[error("neighbourhoods of {a} and {b} are not nested")]
    NotNested { a: VertexId, b: VertexId },
    #[error("colouring is partial: vertex {0} has no colour")]
    PartialColouring(VertexId),
    #[error("colour assignment is missing layer {0}")]
    MissingPair(usize),
    #[error("colour assignment is not good at layer {0}")]
    NotGood(usize),
    #[error("allowable array needs at least one boundary")]
    NoBoundary,
    #[error("allowable array entry {0} is empty")]
    EmptyEntry(usize),
    #[error("pair {pair} at layer {layer} is not permitted by the allowable array")]
    PairNotAllowed { layer: usize, pair: String },
    #[error("oracle refuses {n} vertices (cap {cap})")]
    OracleCap { n: usize, cap: usize },
    #[error("generator gave up after {0} attempts to draw a connected instance")]
    GeneratorExhausted(usize),
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("conservative colouring failed without a traceable chain: {0}")]
    ChainNotFound(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
