//! Reduction to 3-set packing, conflict neighbourhoods and improving sets.
//!
//! The universe holds `d⁺(v)` out-copies and `d⁻(v)` in-copies of every
//! vertex plus one element per edge. Orienting `e = {u, v}` from `u` to `v`
//! corresponds to any set `{u⁺_i, v⁻_j, e}`, so disjoint subfamilies and
//! feasible partial orientations are in size-preserving correspondence.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{is_feasible, Arc, Caps, EdgeId, Instance, PartialOrientation, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetId(pub usize);

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

pub type Subfamily = BTreeSet<SetId>;

/// Origin of a universe element. Copy indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    Plus { vertex: VertexId, copy: u32 },
    Minus { vertex: VertexId, copy: u32 },
    Edge(EdgeId),
}

/// One family member `{tail⁺_tail_copy, head⁻_head_copy, edge}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackingSet {
    /// Universe indices of the out-copy, in-copy and edge element.
    pub elements: [usize; 3],
    pub edge: EdgeId,
    pub tail: VertexId,
    pub tail_copy: u32,
    pub head: VertexId,
    pub head_copy: u32,
}

impl PackingSet {
    pub fn arc(&self) -> Arc {
        Arc {
            edge: self.edge,
            head: self.head,
        }
    }

    pub fn intersects(&self, other: &PackingSet) -> bool {
        self.elements.iter().any(|x| other.elements.contains(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPackingInstance {
    universe: Vec<Element>,
    plus_base: Vec<usize>,
    minus_base: Vec<usize>,
    edge_base: usize,
    caps: Vec<Caps>,
    endpoints: Vec<(VertexId, VertexId)>,
    sets: Vec<PackingSet>,
    set_base: Vec<usize>,
    present: Vec<bool>,
    containing: Vec<Vec<SetId>>,
}

/// Builds the universe and the full family for `inst`, sets enumerated per
/// edge in EdgeId order: first all `u → v` sets over `(i, j)`, then all
/// `v → u` sets, where `(u, v)` is the stored endpoint order.
pub fn build_setpacking(inst: &Instance) -> SetPackingInstance {
    let mut universe = Vec::new();
    let mut plus_base = Vec::with_capacity(inst.num_vertices());
    for v in inst.vertices() {
        plus_base.push(universe.len());
        universe.extend((0..inst.dplus(v)).map(|copy| Element::Plus { vertex: v, copy }));
    }
    let mut minus_base = Vec::with_capacity(inst.num_vertices());
    for v in inst.vertices() {
        minus_base.push(universe.len());
        universe.extend((0..inst.dminus(v)).map(|copy| Element::Minus { vertex: v, copy }));
    }
    let edge_base = universe.len();
    universe.extend(inst.edge_ids().map(Element::Edge));

    let mut sets = Vec::new();
    let mut set_base = Vec::with_capacity(inst.num_edges());
    for e in inst.edge_ids() {
        set_base.push(sets.len());
        let (u, v) = inst.endpoints(e);
        for (tail, head) in [(u, v), (v, u)] {
            for i in 0..inst.dplus(tail) {
                for j in 0..inst.dminus(head) {
                    sets.push(PackingSet {
                        elements: [
                            plus_base[tail.0] + i as usize,
                            minus_base[head.0] + j as usize,
                            edge_base + e.0,
                        ],
                        edge: e,
                        tail,
                        tail_copy: i,
                        head,
                        head_copy: j,
                    });
                }
            }
        }
    }

    let mut containing = vec![Vec::new(); universe.len()];
    for (k, s) in sets.iter().enumerate() {
        for &x in &s.elements {
            containing[x].push(SetId(k));
        }
    }
    SetPackingInstance {
        universe,
        plus_base,
        minus_base,
        edge_base,
        caps: inst.all_caps().to_vec(),
        endpoints: inst.edges().to_vec(),
        present: vec![true; sets.len()],
        sets,
        set_base,
        containing,
    }
}

impl SetPackingInstance {
    pub fn universe(&self) -> &[Element] {
        &self.universe
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    /// Number of set slots, including removed ones.
    pub fn num_slots(&self) -> usize {
        self.sets.len()
    }

    pub fn family_size(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn is_present(&self, s: SetId) -> bool {
        self.present.get(s.0).copied().unwrap_or(false)
    }

    /// Present sets in SetId order.
    pub fn set_ids(&self) -> impl Iterator<Item = SetId> + '_ {
        (0..self.sets.len())
            .map(SetId)
            .filter(|&s| self.present[s.0])
    }

    pub fn set(&self, s: SetId) -> &PackingSet {
        &self.sets[s.0]
    }

    /// Present sets containing universe element `x`.
    pub fn sets_containing(&self, x: usize) -> &[SetId] {
        &self.containing[x]
    }

    pub fn plus_element(&self, v: VertexId, copy: u32) -> usize {
        self.plus_base[v.0] + copy as usize
    }

    pub fn minus_element(&self, v: VertexId, copy: u32) -> usize {
        self.minus_base[v.0] + copy as usize
    }

    pub fn edge_element(&self, e: EdgeId) -> usize {
        self.edge_base + e.0
    }

    pub fn num_edges(&self) -> usize {
        self.endpoints.len()
    }

    /// The set `{tail⁺_i, head⁻_j, edge}`, if it exists and is present.
    pub fn find_set(&self, arc: Arc, tail_copy: u32, head_copy: u32) -> Option<SetId> {
        let (u, v) = *self.endpoints.get(arc.edge.0)?;
        let tail = if arc.head == v {
            u
        } else if arc.head == u {
            v
        } else {
            return None;
        };
        let (dp, dm) = (self.caps[tail.0].out, self.caps[arc.head.0].inn);
        if tail_copy >= dp || head_copy >= dm {
            return None;
        }
        let mut idx = self.set_base[arc.edge.0] + (tail_copy * dm + head_copy) as usize;
        if tail == v {
            idx += (self.caps[u.0].out * self.caps[v.0].inn) as usize;
        }
        let s = SetId(idx);
        self.is_present(s).then_some(s)
    }

    /// A copy of this instance with `removed` taken out of the family.
    /// SetIds of the remaining sets are unchanged.
    pub fn without_sets(&self, removed: &Subfamily) -> SetPackingInstance {
        let mut out = self.clone();
        for s in removed {
            if let Some(p) = out.present.get_mut(s.0) {
                *p = false;
            }
        }
        for list in &mut out.containing {
            list.retain(|s| out.present[s.0]);
        }
        out
    }

    /// First overlapping pair in `sub`, or an error for unknown sets.
    pub fn check_disjoint(&self, sub: &Subfamily) -> Result<()> {
        let mut owner: Vec<Option<SetId>> = vec![None; self.universe.len()];
        for &s in sub {
            if !self.is_present(s) {
                return Err(Error::UnknownSet(s));
            }
            for &x in &self.sets[s.0].elements {
                if let Some(prev) = owner[x] {
                    return Err(Error::OverlappingSets(prev, s));
                }
                owner[x] = Some(s);
            }
        }
        Ok(())
    }

    pub fn is_disjoint(&self, sub: &Subfamily) -> bool {
        self.check_disjoint(sub).is_ok()
    }

    pub fn conflict_graph(&self) -> ConflictGraph<'_> {
        ConflictGraph { sp: self }
    }
}

/// Intersection graph over the family, answered from the element index
/// rather than stored as adjacency.
#[derive(Debug, Clone, Copy)]
pub struct ConflictGraph<'a> {
    sp: &'a SetPackingInstance,
}

impl ConflictGraph<'_> {
    pub fn adjacent(&self, a: SetId, b: SetId) -> bool {
        a != b && self.sp.set(a).intersects(self.sp.set(b))
    }

    pub fn neighbors(&self, s: SetId) -> Subfamily {
        let mut out = Subfamily::new();
        for &x in &self.sp.set(s).elements {
            out.extend(self.sp.sets_containing(x).iter().filter(|&&t| t != s));
        }
        out
    }

    /// `N(X)`: sets outside `X` intersecting some member of `X`.
    pub fn neighborhood(&self, x: &Subfamily) -> Subfamily {
        let mut out = Subfamily::new();
        for &s in x {
            for &e in &self.sp.set(s).elements {
                out.extend(self.sp.sets_containing(e).iter().filter(|t| !x.contains(t)));
            }
        }
        out
    }
}

pub fn conflict_neighbors(sp: &SetPackingInstance, x: &Subfamily) -> Subfamily {
    sp.conflict_graph().neighborhood(x)
}

/// Members of `f0` that intersect some set of `x` (that is `N(X) ∩ F0`
/// for `X` disjoint from `F0`).
pub fn blocking_sets(sp: &SetPackingInstance, f0: &Subfamily, x: &Subfamily) -> Subfamily {
    let mut out = Subfamily::new();
    for &s in x {
        for &e in &sp.set(s).elements {
            out.extend(sp.sets_containing(e).iter().filter(|t| f0.contains(t)));
        }
    }
    out
}

/// Encodes a feasible orientation as a disjoint subfamily. Arcs are taken in
/// EdgeId order and each takes the smallest unused out-copy of its tail and
/// in-copy of its head.
pub fn orientation_to_family(
    inst: &Instance,
    sp: &SetPackingInstance,
    po: &PartialOrientation,
) -> Result<Subfamily> {
    if !is_feasible(inst, po)? {
        return Err(Error::InfeasibleOrientation);
    }
    let n = inst.num_vertices();
    let (mut next_out, mut next_in) = (vec![0u32; n], vec![0u32; n]);
    let mut family = Subfamily::new();
    for a in po.arcs() {
        let tail = inst.other_endpoint(a.edge, a.head);
        let s = sp
            .find_set(a, next_out[tail.0], next_in[a.head.0])
            .ok_or_else(|| Error::Internal(format!("no set for arc on edge {}", a.edge)))?;
        next_out[tail.0] += 1;
        next_in[a.head.0] += 1;
        family.insert(s);
    }
    Ok(family)
}

/// Decodes a disjoint subfamily into the orientation it describes.
pub fn family_to_orientation(
    sp: &SetPackingInstance,
    sub: &Subfamily,
) -> Result<PartialOrientation> {
    sp.check_disjoint(sub)?;
    PartialOrientation::from_arcs(sub.iter().map(|&s| sp.set(s).arc()))
}

/// `X` is improving for `F0` if it avoids `F0`, is pairwise disjoint and
/// meets fewer members of `F0` than it has sets.
pub fn is_improving_set(sp: &SetPackingInstance, f0: &Subfamily, x: &Subfamily) -> bool {
    x.is_disjoint(f0)
        && x.iter().all(|&s| sp.is_present(s))
        && sp.is_disjoint(x)
        && blocking_sets(sp, f0, x).len() < x.len()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn single_edge(caps: [Caps; 2]) -> Instance {
        Instance::new(caps.to_vec(), vec![(0, 1)]).unwrap()
    }

    fn triangle() -> Instance {
        Instance::new(vec![Caps::new(1, 1); 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn set_of(ids: &[usize]) -> Subfamily {
        ids.iter().map(|&i| SetId(i)).collect()
    }

    #[test]
    fn single_edge_family() {
        let sp = build_setpacking(&single_edge([Caps::new(1, 0), Caps::new(0, 1)]));
        assert_eq!(sp.universe_size(), 3);
        assert_eq!(sp.family_size(), 1);
        let s = sp.set(SetId(0));
        assert_eq!((s.tail, s.head), (VertexId(0), VertexId(1)));
        assert_eq!(
            sp.universe()[s.elements[0]],
            Element::Plus {
                vertex: VertexId(0),
                copy: 0
            }
        );
        assert_eq!(sp.universe()[s.elements[2]], Element::Edge(EdgeId(0)));
    }

    #[test]
    fn family_size_counts_copy_pairs() {
        // 2·3 sets u → v plus 1·1 sets v → u
        let sp = build_setpacking(&single_edge([Caps::new(2, 1), Caps::new(1, 3)]));
        assert_eq!(sp.family_size(), 7);
        assert_eq!(sp.universe_size(), 1 + 2 + 1 + 1 + 3);
    }

    #[test]
    fn zero_caps_give_empty_family() {
        let inst = Instance::new(vec![Caps::default(); 3], vec![(0, 1), (1, 2)]).unwrap();
        let sp = build_setpacking(&inst);
        assert_eq!(sp.family_size(), 0);
        assert_eq!(sp.universe_size(), 2);
    }

    #[test]
    fn find_set_matches_enumeration() {
        let inst = Instance::new(
            vec![Caps::new(2, 1), Caps::new(1, 3), Caps::new(2, 2)],
            vec![(0, 1), (2, 1), (0, 2)],
        )
        .unwrap();
        let sp = build_setpacking(&inst);
        for s in sp.set_ids() {
            let p = *sp.set(s);
            assert_eq!(sp.find_set(p.arc(), p.tail_copy, p.head_copy), Some(s));
        }
    }

    #[test]
    fn empty_orientation_roundtrip() {
        let inst = triangle();
        let sp = build_setpacking(&inst);
        let fam = orientation_to_family(&inst, &sp, &PartialOrientation::new()).unwrap();
        assert!(fam.is_empty());
        assert!(family_to_orientation(&sp, &fam).unwrap().is_empty());
    }

    #[test]
    fn directed_triangle_uses_every_copy_once() {
        let inst = triangle();
        let sp = build_setpacking(&inst);
        let po: PartialOrientation = [(0, 1), (1, 2), (2, 0)]
            .iter()
            .map(|&(e, h)| Arc {
                edge: EdgeId(e),
                head: VertexId(h),
            })
            .collect();
        let fam = orientation_to_family(&inst, &sp, &po).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(sp.is_disjoint(&fam));
        let used: BTreeSet<usize> = fam.iter().flat_map(|&s| sp.set(s).elements).collect();
        assert_eq!(used.len(), sp.universe_size());
        assert_eq!(family_to_orientation(&sp, &fam).unwrap(), po);
    }

    #[test]
    fn canonical_copies_for_two_out_arcs() {
        let inst = Instance::new(
            vec![Caps::new(2, 0), Caps::new(0, 1), Caps::new(0, 1)],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let sp = build_setpacking(&inst);
        let po: PartialOrientation = [(0, 1), (1, 2)]
            .iter()
            .map(|&(e, h)| Arc {
                edge: EdgeId(e),
                head: VertexId(h),
            })
            .collect();
        let fam: Vec<_> = orientation_to_family(&inst, &sp, &po)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(sp.set(fam[0]).tail_copy, 0);
        assert_eq!(sp.set(fam[1]).tail_copy, 1);
    }

    #[test]
    fn infeasible_orientation_rejected() {
        let inst = single_edge([Caps::new(0, 0), Caps::new(0, 1)]);
        let sp = build_setpacking(&inst);
        let po = PartialOrientation::from_arcs([Arc {
            edge: EdgeId(0),
            head: VertexId(1),
        }])
        .unwrap();
        assert_eq!(
            orientation_to_family(&inst, &sp, &po),
            Err(Error::InfeasibleOrientation)
        );
    }

    #[test]
    fn overlapping_family_rejected() {
        let inst = single_edge([Caps::new(1, 1), Caps::new(1, 1)]);
        let sp = build_setpacking(&inst);
        assert_eq!(
            family_to_orientation(&sp, &set_of(&[0, 1])),
            Err(Error::OverlappingSets(SetId(0), SetId(1)))
        );
    }

    #[test]
    fn neighbourhood_examples() {
        let inst = single_edge([Caps::new(1, 1), Caps::new(1, 1)]);
        let sp = build_setpacking(&inst);
        assert!(conflict_neighbors(&sp, &Subfamily::new()).is_empty());
        assert_eq!(conflict_neighbors(&sp, &set_of(&[0])), set_of(&[1]));
        assert!(conflict_neighbors(&sp, &set_of(&[0, 1])).is_empty());

        let lone = build_setpacking(&single_edge([Caps::new(1, 0), Caps::new(0, 1)]));
        assert!(conflict_neighbors(&lone, &set_of(&[0])).is_empty());
    }

    /// S1 = {a,b,c}, S2 = {a,d,e}, S3 = {b,f,g} realised as: S1 the arc
    /// u → v on edge 0, S2 = u → w on edge 1 (shares u⁺), S3 = x → v on
    /// edge 2 (shares v⁻); u and v have one copy each.
    pub(crate) fn three_set_instance() -> (Instance, SetPackingInstance) {
        let inst = Instance::new(
            vec![
                Caps::new(1, 0),
                Caps::new(0, 1),
                Caps::new(0, 1),
                Caps::new(1, 0),
            ],
            vec![(0, 1), (0, 2), (3, 1)],
        )
        .unwrap();
        let sp = build_setpacking(&inst);
        assert_eq!(sp.family_size(), 3);
        (inst, sp)
    }

    #[test]
    fn improving_set_examples() {
        let (_, sp) = three_set_instance();
        assert!(is_improving_set(&sp, &Subfamily::new(), &set_of(&[1])));
        assert!(!is_improving_set(&sp, &Subfamily::new(), &Subfamily::new()));
        let f0 = set_of(&[0]);
        assert!(is_improving_set(&sp, &f0, &set_of(&[1, 2])));
        assert!(!is_improving_set(&sp, &f0, &set_of(&[1])));
        assert!(!is_improving_set(&sp, &f0, &set_of(&[0, 1])));
    }

    #[test]
    fn restriction_keeps_ids() {
        let (_, sp) = three_set_instance();
        let r = sp.without_sets(&set_of(&[1]));
        assert_eq!(r.family_size(), 2);
        assert!(!r.is_present(SetId(1)));
        assert_eq!(r.set_ids().collect::<Vec<_>>(), vec![SetId(0), SetId(2)]);
        assert_eq!(conflict_neighbors(&r, &set_of(&[0])), set_of(&[2]));
    }
}
