use thiserror::Error;

use crate::model::{EdgeId, VertexId};
use crate::setpacking::SetId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {head} is not an endpoint of edge {edge}")]
    HeadNotEndpoint { edge: EdgeId, head: VertexId },
    #[error("edge {0} oriented more than once")]
    DuplicateArc(EdgeId),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("partial orientation violates the degree constraints")]
    InfeasibleOrientation,
    #[error("sets {0} and {1} overlap")]
    OverlappingSets(SetId, SetId),
    #[error("unknown set {0}")]
    UnknownSet(SetId),
    #[error("not an improving set")]
    NotImproving,
    #[error("instance is not simple")]
    NotSimple,
    #[error("instance is not proper")]
    NotProper,
    #[error("vertices {0} and {1} are adjacent")]
    AdjacentVertices(VertexId, VertexId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance has {edges} edges, above the oracle limit {limit}")]
    EdgeLimit { edges: usize, limit: usize },
    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
