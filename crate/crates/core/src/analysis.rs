//! Exact oracles and the exchange graph between two orientations.
//!
//! For two feasible orientations `A` and `B` of a simple instance, the
//! exchange graph `H` joins `a ∈ Ā \ B̄` to `b ∈ B̄ \ Ā` when both touch the
//! same connected component of `(V, Ā ∩ B̄)`. Degrees in `H` are at most 4,
//! and for every `X ⊆ B̄ \ Ā` the edge set `(Ā \ N_H(X)) ∪ X` can be fully
//! oriented. Both facts are checked here rather than assumed.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::feasibility::total_orientation;
use crate::model::{is_feasible, Arc, EdgeId, Instance, PartialOrientation};
use crate::setpacking::{SetId, SetPackingInstance};

/// Bipartite graph with edge-labelled sides. `a_adj[i]` lists indices into
/// `b_side`, `b_adj[j]` indices into `a_side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteAuxGraph {
    pub a_side: Vec<EdgeId>,
    pub b_side: Vec<EdgeId>,
    pub a_adj: Vec<Vec<usize>>,
    pub b_adj: Vec<Vec<usize>>,
}

impl BipartiteAuxGraph {
    /// A graph over `a_len + b_len` abstract vertices labelled `EdgeId(i)`.
    pub fn generic(a_len: usize, b_len: usize, pairs: &[(usize, usize)]) -> Self {
        let mut g = BipartiteAuxGraph {
            a_side: (0..a_len).map(EdgeId).collect(),
            b_side: (0..b_len).map(EdgeId).collect(),
            a_adj: vec![Vec::new(); a_len],
            b_adj: vec![Vec::new(); b_len],
        };
        for &(i, j) in pairs {
            g.link(i, j);
        }
        g
    }

    fn link(&mut self, i: usize, j: usize) {
        if !self.a_adj[i].contains(&j) {
            self.a_adj[i].push(j);
            self.b_adj[j].push(i);
        }
    }

    pub fn max_degree(&self) -> usize {
        self.a_adj
            .iter()
            .chain(&self.b_adj)
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.a_adj.iter().map(Vec::len).sum()
    }

    /// `N_H(X)` for `X` given as indices into `b_side`.
    pub fn neighborhood(&self, x: &[usize]) -> BTreeSet<usize> {
        x.iter()
            .flat_map(|&j| self.b_adj[j].iter().copied())
            .collect()
    }
}

/// Shape of one connected component of `(V, Ā ∩ B̄)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentShape {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
}

impl ComponentShape {
    /// A path (possibly a single vertex) or a cycle (possibly of length 2).
    pub fn is_path_or_cycle(&self) -> bool {
        self.max_degree <= 2 && (self.edges + 1 == self.vertices || self.edges == self.vertices)
    }
}

struct Components {
    of: Vec<usize>,
    shapes: Vec<ComponentShape>,
}

fn common_components(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
) -> Components {
    let n = inst.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let common: Vec<EdgeId> = a.edge_set().filter(|&e| b.contains_edge(e)).collect();
    let mut degree = vec![0usize; n];
    for &e in &common {
        let (u, v) = inst.endpoints(e);
        degree[u.0] += 1;
        degree[v.0] += 1;
        let (ru, rv) = (find(&mut parent, u.0), find(&mut parent, v.0));
        parent[ru] = rv;
    }
    let mut index = vec![usize::MAX; n];
    let mut of = vec![0; n];
    let mut shapes = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = shapes.len();
            shapes.push(ComponentShape {
                vertices: 0,
                edges: 0,
                max_degree: 0,
            });
        }
        of[v] = index[r];
        let s = &mut shapes[index[r]];
        s.vertices += 1;
        s.max_degree = s.max_degree.max(degree[v]);
    }
    for &e in &common {
        shapes[of[inst.endpoints(e).0 .0]].edges += 1;
    }
    Components { of, shapes }
}

/// Shapes of the components of `(V, Ā ∩ B̄)`, one per component.
pub fn common_subgraph_components(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
) -> Vec<ComponentShape> {
    common_components(inst, a, b).shapes
}

fn check_pair(inst: &Instance, a: &PartialOrientation, b: &PartialOrientation) -> Result<()> {
    if !inst.is_simple() {
        return Err(Error::NotSimple);
    }
    if !is_feasible(inst, a)? || !is_feasible(inst, b)? {
        return Err(Error::InfeasibleOrientation);
    }
    Ok(())
}

/// Builds the exchange graph with `a_side = Ā \ B̄` and `b_side = B̄ \ Ā`.
pub fn build_h(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
) -> Result<BipartiteAuxGraph> {
    check_pair(inst, a, b)?;
    let comps = common_components(inst, a, b);
    if let Some(bad) = comps.shapes.iter().find(|s| !s.is_path_or_cycle()) {
        return Err(Error::Internal(format!(
            "common subgraph component is neither a path nor a cycle: {bad:?}"
        )));
    }
    let touched = |e: EdgeId| {
        let (u, v) = inst.endpoints(e);
        [comps.of[u.0], comps.of[v.0]]
    };
    let a_side: Vec<EdgeId> = a.edge_set().filter(|&e| !b.contains_edge(e)).collect();
    let b_side: Vec<EdgeId> = b.edge_set().filter(|&e| !a.contains_edge(e)).collect();
    let mut h = BipartiteAuxGraph {
        a_adj: vec![Vec::new(); a_side.len()],
        b_adj: vec![Vec::new(); b_side.len()],
        a_side,
        b_side,
    };
    for i in 0..h.a_side.len() {
        let ca = touched(h.a_side[i]);
        for j in 0..h.b_side.len() {
            let cb = touched(h.b_side[j]);
            if ca.iter().any(|c| cb.contains(c)) {
                h.link(i, j);
            }
        }
    }
    Ok(h)
}

/// Orients `(Ā \ N_H(X)) ∪ X`, where `x` holds indices into `h.b_side`.
/// `Ok(None)` means the exchange property failed for this `X`.
pub fn check_exchange(
    inst: &Instance,
    a: &PartialOrientation,
    h: &BipartiteAuxGraph,
    x: &[usize],
) -> Result<Option<PartialOrientation>> {
    if let Some(&j) = x.iter().find(|&&j| j >= h.b_side.len()) {
        return Err(Error::Precondition(format!(
            "index {j} is outside the B side"
        )));
    }
    let blocked: BTreeSet<EdgeId> = h.neighborhood(x).into_iter().map(|i| h.a_side[i]).collect();
    let edges = exchange_edges(a, h, x, &blocked);
    total_orientation(inst, edges)
}

fn exchange_edges(
    a: &PartialOrientation,
    h: &BipartiteAuxGraph,
    x: &[usize],
    blocked: &BTreeSet<EdgeId>,
) -> BTreeSet<EdgeId> {
    a.edge_set()
        .filter(|e| !blocked.contains(e))
        .chain(x.iter().map(|&j| h.b_side[j]))
        .collect()
}

/// Smallest `X ⊆ B` (then lexicographically first) with `|N_H(X)| < |X|`
/// and `|X| ≤ max_size`, as indices into `b_side`.
pub fn find_improving_set_bipartite(h: &BipartiteAuxGraph, max_size: usize) -> Option<Vec<usize>> {
    (1..=max_size.min(h.b_side.len())).find_map(|k| {
        (0..h.b_side.len())
            .combinations(k)
            .find(|x| h.neighborhood(x).len() < x.len())
    })
}

fn orientable_alone(inst: &Instance, e: EdgeId) -> bool {
    let (u, v) = inst.endpoints(e);
    (inst.dplus(u) > 0 && inst.dminus(v) > 0) || (inst.dplus(v) > 0 && inst.dminus(u) > 0)
}

pub const DEFAULT_EDGE_LIMIT: usize = 20;

/// Maximum feasible partial orientation by trying edge subsets from the
/// largest admissible size down; ties go to the lexicographically first
/// subset.
pub fn exact_opt(inst: &Instance, edge_limit: usize) -> Result<PartialOrientation> {
    if inst.num_edges() > edge_limit {
        return Err(Error::EdgeLimit {
            edges: inst.num_edges(),
            limit: edge_limit,
        });
    }
    let usable: Vec<EdgeId> = inst
        .edge_ids()
        .filter(|&e| orientable_alone(inst, e))
        .collect();
    let (dp, dm) = inst.cap_totals();
    let bound = (dp.min(dm) as usize).min(usable.len());
    for k in (0..=bound).rev() {
        for subset in usable.iter().copied().combinations(k) {
            if let Some(po) = total_orientation(inst, subset)? {
                return Ok(po);
            }
        }
    }
    Err(Error::Internal("the empty orientation was rejected".into()))
}

/// Optimum size by depth-first enumeration of all `3^m` edge states with
/// cap pruning. Shares no code with the flow oracle.
pub fn exact_opt_enumerate(inst: &Instance) -> usize {
    struct Walk<'a> {
        inst: &'a Instance,
        out: Vec<u32>,
        inn: Vec<u32>,
        best: usize,
    }
    impl Walk<'_> {
        fn go(&mut self, i: usize, size: usize) {
            let m = self.inst.num_edges();
            if size + (m - i) <= self.best {
                return;
            }
            if i == m {
                self.best = size;
                return;
            }
            let (u, v) = self.inst.endpoints(EdgeId(i));
            for (tail, head) in [(u, v), (v, u)] {
                if self.out[tail.0] < self.inst.dplus(tail)
                    && self.inn[head.0] < self.inst.dminus(head)
                {
                    self.out[tail.0] += 1;
                    self.inn[head.0] += 1;
                    self.go(i + 1, size + 1);
                    self.out[tail.0] -= 1;
                    self.inn[head.0] -= 1;
                }
            }
            self.go(i + 1, size);
        }
    }
    let n = inst.num_vertices();
    let mut w = Walk {
        inst,
        out: vec![0; n],
        inn: vec![0; n],
        best: 0,
    };
    w.go(0, 0);
    w.best
}

/// Whether the edges in `edges` admit a total orientation, by trying all
/// `2^|edges|` direction choices.
pub fn total_orientation_bruteforce(
    inst: &Instance,
    edges: &[EdgeId],
) -> Option<PartialOrientation> {
    (0u64..1 << edges.len()).find_map(|mask| {
        let po: PartialOrientation = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let (u, v) = inst.endpoints(e);
                Arc {
                    edge: e,
                    head: if mask >> i & 1 == 1 { u } else { v },
                }
            })
            .collect();
        (po.len() == edges.len() && is_feasible(inst, &po).unwrap_or(false)).then_some(po)
    })
}

/// Size of a largest pairwise disjoint subfamily, by branching over edge
/// elements (each set contains exactly one).
pub fn max_packing_bruteforce(sp: &SetPackingInstance) -> usize {
    fn go(sp: &SetPackingInstance, e: usize, used: &mut Vec<bool>, size: usize, best: &mut usize) {
        let m = sp.num_edges();
        if size + (m - e) <= *best {
            return;
        }
        if e == m {
            *best = size;
            return;
        }
        let sets: Vec<SetId> = sp.sets_containing(sp.edge_element(EdgeId(e))).to_vec();
        for s in sets {
            let elems = sp.set(s).elements;
            if elems.iter().all(|&x| !used[x]) {
                elems.iter().for_each(|&x| used[x] = true);
                go(sp, e + 1, used, size + 1, best);
                elems.iter().for_each(|&x| used[x] = false);
            }
        }
        go(sp, e + 1, used, size, best);
    }
    let mut best = 0;
    go(sp, 0, &mut vec![false; sp.universe_size()], 0, &mut best);
    best
}

/// Exact `|OPT| / |F|`; `Infinite` when `|F| = 0 < |OPT|`, `1` when both
/// are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ratio {
    Finite { num: u64, den: u64 },
    Infinite,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(opt: u64, found: u64) -> Self {
        match (opt, found) {
            (0, 0) => Ratio::Finite { num: 1, den: 1 },
            (_, 0) => Ratio::Infinite,
            _ => {
                let g = gcd(opt, found);
                Ratio::Finite {
                    num: opt / g,
                    den: found / g,
                }
            }
        }
    }

    /// `(num, den)` with `den = 0` for the infinite ratio.
    pub fn parts(self) -> (u64, u64) {
        match self {
            Ratio::Finite { num, den } => (num, den),
            Ratio::Infinite => (1, 0),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Ratio::Finite { num, den } => num as f64 / den as f64,
            Ratio::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ratio::Infinite, Ratio::Infinite) => Ordering::Equal,
            (Ratio::Infinite, _) => Ordering::Greater,
            (_, Ratio::Infinite) => Ordering::Less,
            (Ratio::Finite { num: a, den: b }, Ratio::Finite { num: c, den: d }) => {
                (u128::from(*a) * u128::from(*d)).cmp(&(u128::from(*c) * u128::from(*b)))
            }
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite { num, den } => write!(f, "{num}/{den}"),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

pub fn measure_ratio(inst: &Instance, f: &PartialOrientation, edge_limit: usize) -> Result<Ratio> {
    if !is_feasible(inst, f)? {
        return Err(Error::InfeasibleOrientation);
    }
    let opt = exact_opt(inst, edge_limit)?;
    Ok(Ratio::new(opt.len() as u64, f.len() as u64))
}

/// How the undirected edge sets of a found solution and an optimum overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Overlap {
    pub common: usize,
    pub only_found: usize,
    pub only_opt: usize,
}

pub fn overlap(found: &PartialOrientation, opt: &PartialOrientation) -> Overlap {
    let common = found.edge_set().filter(|&e| opt.contains_edge(e)).count();
    Overlap {
        common,
        only_found: found.len() - common,
        only_opt: opt.len() - common,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Caps, VertexId};
    use crate::setpacking::build_setpacking;

    fn arcs(list: &[(usize, usize)]) -> PartialOrientation {
        list.iter()
            .map(|&(e, h)| Arc {
                edge: EdgeId(e),
                head: VertexId(h),
            })
            .collect()
    }

    fn path_uvw() -> Instance {
        Instance::new(
            vec![Caps::new(1, 0), Caps::new(1, 1), Caps::new(0, 1)],
            vec![(0, 1), (1, 2)],
        )
        .unwrap()
    }

    fn star() -> Instance {
        let mut caps = vec![Caps::new(0, 1)];
        caps.extend([Caps::new(1, 0); 3]);
        Instance::new(caps, vec![(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn identical_orientations_give_empty_h() {
        let inst = path_uvw();
        let a = arcs(&[(0, 1)]);
        let h = build_h(&inst, &a, &a).unwrap();
        assert!(h.a_side.is_empty() && h.b_side.is_empty());
    }

    #[test]
    fn path_h_is_single_edge() {
        let inst = path_uvw();
        let a = arcs(&[(0, 1)]);
        let b = arcs(&[(1, 2)]);
        let h = build_h(&inst, &a, &b).unwrap();
        assert_eq!(h.a_side, vec![EdgeId(0)]);
        assert_eq!(h.b_side, vec![EdgeId(1)]);
        assert_eq!(h.num_edges(), 1);
        assert_eq!(find_improving_set_bipartite(&h, 3), None);

        let po = check_exchange(&inst, &a, &h, &[0]).unwrap().unwrap();
        assert_eq!(po, arcs(&[(1, 2)]));
        let keep = check_exchange(&inst, &a, &h, &[]).unwrap().unwrap();
        assert_eq!(keep.edge_set().collect::<Vec<_>>(), vec![EdgeId(0)]);
    }

    #[test]
    fn h_requires_simple_instance() {
        let inst = Instance::new(vec![Caps::new(2, 0), Caps::new(0, 1)], vec![(0, 1)]).unwrap();
        let empty = PartialOrientation::new();
        assert_eq!(build_h(&inst, &empty, &empty), Err(Error::NotSimple));
    }

    #[test]
    fn bipartite_improving_examples() {
        let isolated = BipartiteAuxGraph::generic(1, 2, &[(0, 0)]);
        assert_eq!(find_improving_set_bipartite(&isolated, 1), Some(vec![1]));

        let matching = BipartiteAuxGraph::generic(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(find_improving_set_bipartite(&matching, 3), None);

        let shared = BipartiteAuxGraph::generic(1, 2, &[(0, 0), (0, 1)]);
        assert_eq!(find_improving_set_bipartite(&shared, 1), None);
        assert_eq!(find_improving_set_bipartite(&shared, 2), Some(vec![0, 1]));
    }

    #[test]
    fn exact_opt_examples() {
        assert_eq!(exact_opt(&star(), 20).unwrap().len(), 1);
        let tri = Instance::new(vec![Caps::new(1, 1); 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(exact_opt(&tri, 20).unwrap().len(), 3);
        let dead = Instance::new(vec![Caps::new(1, 0), Caps::new(0, 0)], vec![(0, 1)]).unwrap();
        assert_eq!(exact_opt(&dead, 20).unwrap().len(), 0);
        assert_eq!(
            exact_opt(&tri, 2),
            Err(Error::EdgeLimit { edges: 3, limit: 2 })
        );
    }

    #[test]
    fn enumeration_agrees_on_examples() {
        assert_eq!(exact_opt_enumerate(&star()), 1);
        assert_eq!(exact_opt_enumerate(&path_uvw()), 2);
    }

    #[test]
    fn packing_matches_opt_on_examples() {
        for inst in [star(), path_uvw()] {
            let sp = build_setpacking(&inst);
            assert_eq!(max_packing_bruteforce(&sp), exact_opt_enumerate(&inst));
        }
    }

    #[test]
    fn ratio_arithmetic() {
        assert_eq!(Ratio::new(5, 4).to_string(), "5/4");
        assert_eq!(Ratio::new(6, 6), Ratio::Finite { num: 1, den: 1 });
        assert_eq!(Ratio::new(0, 0), Ratio::Finite { num: 1, den: 1 });
        assert_eq!(Ratio::new(3, 0), Ratio::Infinite);
        assert!(Ratio::new(4, 3) > Ratio::new(5, 4));
        assert!(Ratio::Infinite > Ratio::new(100, 1));
        assert_eq!(Ratio::new(8, 6).parts(), (4, 3));
    }

    #[test]
    fn measure_ratio_examples() {
        let tri = Instance::new(vec![Caps::new(1, 1); 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let opt = exact_opt(&tri, 20).unwrap();
        assert_eq!(measure_ratio(&tri, &opt, 20).unwrap(), Ratio::new(1, 1));
        let zero = Instance::new(vec![Caps::default(); 2], vec![(0, 1)]).unwrap();
        assert_eq!(
            measure_ratio(&zero, &PartialOrientation::new(), 20).unwrap(),
            Ratio::new(1, 1)
        );
        assert_eq!(
            measure_ratio(&tri, &PartialOrientation::new(), 20).unwrap(),
            Ratio::Infinite
        );
    }

    #[test]
    fn component_shapes() {
        let tri = Instance::new(vec![Caps::new(1, 1); 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let cyc = arcs(&[(0, 1), (1, 2), (2, 0)]);
        let shapes = common_subgraph_components(&tri, &cyc, &cyc);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].edges, 3);
        assert!(shapes[0].is_path_or_cycle());
    }
}
