//! Local-search approximation for the upper degree-constrained partial
//! orientation problem (UDPO): orient as many edges of a multigraph as
//! possible while every vertex keeps at most `d⁺(v)` outgoing and `d⁻(v)`
//! incoming arcs.
//!
//! The crate contains the solver ([`search`]), the flow-based oracle that
//! decides whether a fixed edge set can be fully oriented
//! ([`feasibility`]), the reduction to 3-set packing ([`setpacking`]), the
//! vertex-splitting reduction to instances with 0/1 caps ([`simplify`]),
//! exact oracles and exchange-graph checks ([`analysis`]), and file formats,
//! generators and verification suites ([`harness`]).

pub mod analysis;
pub mod error;
pub mod feasibility;
pub mod flow;
pub mod harness;
pub mod model;
pub mod search;
pub mod setpacking;
pub mod simplify;

pub use error::{Error, Result};
pub use feasibility::total_orientation;
pub use model::{
    is_feasible, make_proper, validate_instance, Arc, Caps, EdgeId, Instance, PartialOrientation,
    VertexId,
};
pub use search::{local_search, SearchParams, SearchReport};
