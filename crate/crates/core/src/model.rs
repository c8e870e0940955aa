//! Instances of the upper degree-constrained partial orientation problem
//! and partial orientations over them.
//!
//! An [`Instance`] is an undirected multigraph with an out-degree cap `d⁺`
//! and an in-degree cap `d⁻` on every vertex. A [`PartialOrientation`]
//! orients a subset of the edges, at most one direction per edge.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense 0-based vertex index. Displays 1-based, matching the file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Dense 0-based edge index. Displays 1-based, matching the file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

/// Out/in degree caps of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Caps {
    pub out: u32,
    pub inn: u32,
}

impl Caps {
    pub const fn new(out: u32, inn: u32) -> Self {
        Caps { out, inn }
    }

    pub fn max(self) -> u32 {
        self.out.max(self.inn)
    }

    pub fn total(self) -> u32 {
        self.out + self.inn
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    caps: Vec<Caps>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Instance {
    /// Builds an instance and rejects it if [`validate_instance`] reports
    /// any violation.
    pub fn new(caps: Vec<Caps>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let inst = Self::from_raw(caps, edges);
        let report = validate_instance(&inst);
        if report.is_valid() {
            Ok(inst)
        } else {
            Err(Error::InvalidInstance(report.summary()))
        }
    }

    /// Builds an instance without validation. Other operations in this
    /// crate assume a valid instance.
    pub fn from_raw(caps: Vec<Caps>, edges: Vec<(usize, usize)>) -> Self {
        Instance {
            caps,
            edges: edges
                .into_iter()
                .map(|(u, v)| (VertexId(u), VertexId(v)))
                .collect(),
        }
    }

    pub fn empty() -> Self {
        Instance {
            caps: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.caps.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.caps.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn caps(&self, v: VertexId) -> Caps {
        self.caps[v.0]
    }

    pub fn all_caps(&self) -> &[Caps] {
        &self.caps
    }

    pub fn dplus(&self, v: VertexId) -> u32 {
        self.caps[v.0].out
    }

    pub fn dminus(&self, v: VertexId) -> u32 {
        self.caps[v.0].inn
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    /// The endpoint of `e` that is not `v`. `v` must be an endpoint.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.caps.len()];
        for &(u, v) in &self.edges {
            deg[u.0] += 1;
            deg[v.0] += 1;
        }
        deg
    }

    /// Incident edges per vertex, in EdgeId order.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.caps.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u.0].push(EdgeId(i));
            inc[v.0].push(EdgeId(i));
        }
        inc
    }

    /// `(D⁺, D⁻)`: the sums of all out and in caps.
    pub fn cap_totals(&self) -> (u64, u64) {
        self.caps.iter().fold((0, 0), |(p, m), c| {
            (p + u64::from(c.out), m + u64::from(c.inn))
        })
    }

    pub fn class(&self) -> InstanceClass {
        let deg = self.degrees();
        InstanceClass {
            is_simple: self.caps.iter().all(|c| c.out <= 1 && c.inn <= 1),
            is_proper: self
                .caps
                .iter()
                .zip(&deg)
                .all(|(c, &d)| c.max() > 0 && d >= c.max()),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.class().is_simple
    }

    pub fn is_proper(&self) -> bool {
        self.class().is_proper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub edge: EdgeId,
    /// The vertex the arc enters.
    pub head: VertexId,
}

/// A set of arcs with at most one arc per edge, keyed by edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialOrientation {
    heads: BTreeMap<EdgeId, VertexId>,
}

impl PartialOrientation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Collects arcs, rejecting a second arc on the same edge.
    pub fn from_arcs<I: IntoIterator<Item = Arc>>(arcs: I) -> Result<Self> {
        let mut po = Self::new();
        for a in arcs {
            po.insert(a)?;
        }
        Ok(po)
    }

    pub fn insert(&mut self, arc: Arc) -> Result<()> {
        if self.heads.insert(arc.edge, arc.head).is_some() {
            return Err(Error::DuplicateArc(arc.edge));
        }
        Ok(())
    }

    /// Inserts or overwrites the arc on `arc.edge`.
    pub fn set(&mut self, arc: Arc) {
        self.heads.insert(arc.edge, arc.head);
    }

    pub fn remove(&mut self, e: EdgeId) -> Option<VertexId> {
        self.heads.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn head(&self, e: EdgeId) -> Option<VertexId> {
        self.heads.get(&e).copied()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.heads.contains_key(&e)
    }

    /// Arcs in EdgeId order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.heads.iter().map(|(&edge, &head)| Arc { edge, head })
    }

    /// The underlying undirected edge set, in EdgeId order.
    pub fn edge_set(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.heads.keys().copied()
    }

    /// Checks that every arc references an edge of `inst` and enters one of
    /// its endpoints.
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        for a in self.arcs() {
            if !inst.has_edge(a.edge) {
                return Err(Error::UnknownEdge(a.edge));
            }
            let (u, v) = inst.endpoints(a.edge);
            if a.head != u && a.head != v {
                return Err(Error::HeadNotEndpoint {
                    edge: a.edge,
                    head: a.head,
                });
            }
        }
        Ok(())
    }

    /// Per-vertex `(out, in)` degrees. The orientation must be consistent
    /// with `inst`.
    pub fn degrees(&self, inst: &Instance) -> (Vec<u32>, Vec<u32>) {
        let n = inst.num_vertices();
        let (mut out, mut inn) = (vec![0u32; n], vec![0u32; n]);
        for a in self.arcs() {
            let tail = inst.other_endpoint(a.edge, a.head);
            out[tail.0] += 1;
            inn[a.head.0] += 1;
        }
        (out, inn)
    }
}

impl FromIterator<Arc> for PartialOrientation {
    /// Later arcs on the same edge overwrite earlier ones.
    fn from_iter<I: IntoIterator<Item = Arc>>(iter: I) -> Self {
        let mut po = Self::new();
        for a in iter {
            po.set(a);
        }
        po
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceClass {
    pub is_simple: bool,
    pub is_proper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    SelfLoop { edge: EdgeId },
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { edge } => write!(f, "self-loop on edge {edge}"),
            Violation::DanglingEndpoint { edge, vertex } => {
                write!(f, "edge {edge} references missing vertex {vertex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Only meaningful when there are no violations.
    pub class: InstanceClass,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Reports dangling endpoints and self-loops, and classifies the instance.
/// Caps are unsigned, so negative constraints cannot be represented.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let n = inst.num_vertices();
    let mut violations = Vec::new();
    for (i, &(u, v)) in inst.edges.iter().enumerate() {
        let edge = EdgeId(i);
        for w in [u, v] {
            if w.0 >= n {
                violations.push(Violation::DanglingEndpoint { edge, vertex: w });
            }
        }
        if u == v {
            violations.push(Violation::SelfLoop { edge });
        }
    }
    let class = if violations.is_empty() {
        inst.class()
    } else {
        InstanceClass {
            is_simple: false,
            is_proper: false,
        }
    };
    ValidationReport { violations, class }
}

/// True iff every vertex's out and in degrees under `po` respect its caps.
pub fn is_feasible(inst: &Instance, po: &PartialOrientation) -> Result<bool> {
    po.check_against(inst)?;
    let (out, inn) = po.degrees(inst);
    Ok(inst
        .caps
        .iter()
        .enumerate()
        .all(|(v, c)| out[v] <= c.out && inn[v] <= c.inn))
}

/// Result of [`make_proper`], with provenance of the surviving elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperReduction {
    pub instance: Instance,
    /// `edge_origin[new] = original`.
    pub edge_origin: Vec<EdgeId>,
    /// `vertex_origin[new] = original`.
    pub vertex_origin: Vec<VertexId>,
}

impl ProperReduction {
    /// Translates an orientation of the reduced instance back to the
    /// original one.
    pub fn lift(&self, po: &PartialOrientation) -> PartialOrientation {
        po.arcs()
            .map(|a| Arc {
                edge: self.edge_origin[a.edge.0],
                head: self.vertex_origin[a.head.0],
            })
            .collect()
    }
}

/// Reduces to an equivalent proper instance: clamps caps to degrees,
/// drops edges at vertices with both caps zero and drops isolated vertices,
/// until nothing changes. The optimum value is unchanged.
pub fn make_proper(inst: &Instance) -> ProperReduction {
    let n = inst.num_vertices();
    let mut caps = inst.caps.clone();
    let mut alive = vec![true; inst.num_edges()];
    loop {
        let mut deg = vec![0u32; n];
        for (i, &(u, v)) in inst.edges.iter().enumerate() {
            if alive[i] {
                deg[u.0] += 1;
                deg[v.0] += 1;
            }
        }
        let mut changed = false;
        for (c, &d) in caps.iter_mut().zip(&deg) {
            let clamped = Caps::new(c.out.min(d), c.inn.min(d));
            if clamped != *c {
                *c = clamped;
                changed = true;
            }
        }
        for (i, &(u, v)) in inst.edges.iter().enumerate() {
            if alive[i] && (caps[u.0].max() == 0 || caps[v.0].max() == 0) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut deg = vec![0u32; n];
    for (i, &(u, v)) in inst.edges.iter().enumerate() {
        if alive[i] {
            deg[u.0] += 1;
            deg[v.0] += 1;
        }
    }
    let mut new_index = vec![usize::MAX; n];
    let mut vertex_origin = Vec::new();
    let mut new_caps = Vec::new();
    for v in 0..n {
        if deg[v] > 0 {
            new_index[v] = vertex_origin.len();
            vertex_origin.push(VertexId(v));
            new_caps.push(caps[v]);
        }
    }
    let mut edge_origin = Vec::new();
    let mut new_edges = Vec::new();
    for (i, &(u, v)) in inst.edges.iter().enumerate() {
        if alive[i] {
            edge_origin.push(EdgeId(i));
            new_edges.push((VertexId(new_index[u.0]), VertexId(new_index[v.0])));
        }
    }
    ProperReduction {
        instance: Instance {
            caps: new_caps,
            edges: new_edges,
        },
        edge_origin,
        vertex_origin,
    }
}
