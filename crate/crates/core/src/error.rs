use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("Exists probe is not available in the adjacency-list model")]
    ModelViolation,

    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: Vertex, v: Vertex },

    #[error("find_path from vertex {u} exhausted its budget before reaching the core tree")]
    FindPathFailed { u: Vertex },

    #[error("vertex {u} has no neighbours")]
    IsolatedVertex { u: Vertex },

    #[error("random walks from the root visited only {visited} vertices (expected at least {expected})")]
    WalkDegenerate { visited: usize, expected: usize },

    #[error("vertex {vertex} is not in the giant component of the weight-{layer} subgraph")]
    VertexNotInGiant { vertex: Vertex, layer: u32 },

    #[error("tree path from vertex {x} could not be recovered: {source}")]
    PathRecoveryFailed {
        x: Vertex,
        #[source]
        source: Box<Error>,
    },

    #[error("small component of vertex {u} at layer {layer} has no incident weight-{layer} edge")]
    NoWeightIEdge { u: Vertex, layer: u32 },

    #[error("no layer-1 root among the first {tried} candidate vertices")]
    RootNotFound { tried: usize },

    #[error("edge weight {weight} outside 1..={max}")]
    WeightOutOfRange { weight: u32, max: u32 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("graph has {n} vertices; exact conductance is limited to n <= {max}")]
    TooLarge { n: usize, max: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
