//! Total orientation of a chosen edge subset.
//!
//! If every edge of a subgraph `S` is oriented, `deg⁺(v) = deg_S(v) - deg⁻(v)`,
//! so both caps at `v` reduce to an interval on the in-degree:
//! `max(0, deg_S(v) - d⁺(v)) ≤ deg⁻(v) ≤ d⁻(v)`. Each selected edge sends one
//! unit to the endpoint it will enter, and each vertex forwards between the
//! two bounds to the sink.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::flow::{solve_feasible_flow, FlowNetwork};
use crate::model::{Arc, EdgeId, Instance, PartialOrientation};

const SOURCE: usize = 0;
const SINK: usize = 1;

/// Orients every edge in `edges` within the caps of `inst`, or returns
/// `None` if that is impossible.
pub fn total_orientation<I>(inst: &Instance, edges: I) -> Result<Option<PartialOrientation>>
where
    I: IntoIterator<Item = EdgeId>,
{
    let selected: BTreeSet<EdgeId> = edges.into_iter().collect();
    if let Some(&e) = selected.iter().find(|e| !inst.has_edge(**e)) {
        return Err(Error::UnknownEdge(e));
    }

    let n = inst.num_vertices();
    let mut deg = vec![0u64; n];
    for &e in &selected {
        let (u, v) = inst.endpoints(e);
        deg[u.0] += 1;
        deg[v.0] += 1;
    }
    let bounds: Vec<(u64, u64)> = inst
        .all_caps()
        .iter()
        .zip(&deg)
        .map(|(c, &d)| (d.saturating_sub(u64::from(c.out)), u64::from(c.inn)))
        .collect();
    if bounds.iter().any(|&(lo, hi)| lo > hi) {
        return Ok(None);
    }

    let m = selected.len();
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n, SOURCE, SINK);
    let mut choice_arcs = Vec::with_capacity(m);
    for (k, &e) in selected.iter().enumerate() {
        let (u, v) = inst.endpoints(e);
        net.add_arc(SOURCE, 2 + k, 1, 1);
        let into_u = net.add_arc(2 + k, vertex_node(u.0), 0, 1);
        net.add_arc(2 + k, vertex_node(v.0), 0, 1);
        choice_arcs.push((e, into_u, u, v));
    }
    for (v, &(lo, hi)) in bounds.iter().enumerate() {
        if deg[v] > 0 {
            net.add_arc(vertex_node(v), SINK, lo, hi);
        }
    }

    let Some(flow) = solve_feasible_flow(&net)? else {
        return Ok(None);
    };
    let po = choice_arcs
        .into_iter()
        .map(|(edge, into_u, u, v)| Arc {
            edge,
            head: if flow[into_u] == 1 { u } else { v },
        })
        .collect();
    Ok(Some(po))
}
