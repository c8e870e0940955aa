//! Joining and splitting vertices.
//!
//! Splitting a vertex `v` whose caps exceed 1 moves a few of its edges to a
//! fresh vertex with caps in {(1,0), (0,1), (1,1)}, chosen so that two given
//! feasible orientations `A` and `B` stay feasible. Repeating it yields an
//! instance where every cap is 0 or 1.
//!
//! Unused capacity at `v` is modelled by virtual edges: one per unit of
//! slack, typed `+`/`-` for the orientation owning the slack and `0` for the
//! other one. Virtual edges take part in the case analysis only. Selecting
//! one never moves anything; it just means the matching cap unit at `v`
//! is dropped instead of being handed over.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{is_feasible, Arc, Caps, EdgeId, Instance, PartialOrientation, VertexId};

/// Identifies two non-adjacent vertices, summing their caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joined {
    pub instance: Instance,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<VertexId>,
}

impl Joined {
    pub fn remap(&self, po: &PartialOrientation) -> PartialOrientation {
        po.arcs()
            .map(|a| Arc {
                edge: a.edge,
                head: self.vertex_map[a.head.0],
            })
            .collect()
    }
}

/// Joins `u` and `v` into one vertex. The merged vertex takes the smaller
/// id; higher ids shift down by one. Edge ids are unchanged.
pub fn join_vertices(inst: &Instance, u: VertexId, v: VertexId) -> Result<Joined> {
    let n = inst.num_vertices();
    for w in [u, v] {
        if w.0 >= n {
            return Err(Error::UnknownVertex(w));
        }
    }
    if u == v {
        return Err(Error::Precondition(
            "cannot join a vertex with itself".into(),
        ));
    }
    if inst
        .edges()
        .iter()
        .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    {
        return Err(Error::AdjacentVertices(u, v));
    }
    let (keep, gone) = if u < v { (u, v) } else { (v, u) };
    let vertex_map: Vec<VertexId> = (0..n)
        .map(|w| match w {
            w if w == gone.0 => keep,
            w if w > gone.0 => VertexId(w - 1),
            w => VertexId(w),
        })
        .collect();

    let mut caps = inst.all_caps().to_vec();
    let merged = Caps::new(caps[u.0].out + caps[v.0].out, caps[u.0].inn + caps[v.0].inn);
    caps[keep.0] = merged;
    caps.remove(gone.0);
    let edges = inst
        .edges()
        .iter()
        .map(|&(a, b)| (vertex_map[a.0].0, vertex_map[b.0].0))
        .collect();
    Ok(Joined {
        instance: Instance::from_raw(caps, edges),
        vertex_map,
    })
}

/// Which case of the splitting argument produced an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitRule {
    /// One edge leaving `v` in both orientations.
    OutOut,
    /// One edge entering `v` in both orientations.
    InIn,
    /// `+-` and `-+`.
    Crossed,
    /// `0+` and `+0`.
    ShiftedOut,
    /// `0-` and `-0`.
    ShiftedIn,
    /// `+-`, `0+`, `-0`.
    TripleA,
    /// `-+`, `+0`, `0-`.
    TripleB,
}

impl SplitRule {
    pub fn grant(self) -> Caps {
        match self {
            SplitRule::OutOut | SplitRule::ShiftedOut => Caps::new(1, 0),
            SplitRule::InIn | SplitRule::ShiftedIn => Caps::new(0, 1),
            SplitRule::Crossed | SplitRule::TripleA | SplitRule::TripleB => Caps::new(1, 1),
        }
    }
}

impl fmt::Display for SplitRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitRule::OutOut | SplitRule::InIn => "1",
            SplitRule::Crossed => "2",
            SplitRule::ShiftedOut => "3a",
            SplitRule::ShiftedIn => "3b",
            SplitRule::TripleA => "4a",
            SplitRule::TripleB => "4b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvent {
    pub vertex: VertexId,
    /// `None` when no real edge moved, or when every real edge of `vertex`
    /// was selected and `vertex` simply takes the granted caps.
    pub new_vertex: Option<VertexId>,
    pub moved: Vec<EdgeId>,
    pub grant: Caps,
    /// Caps of `vertex` before and after the event.
    pub caps_before: Caps,
    pub caps_after: Caps,
    pub rule: SplitRule,
    /// Virtual (slack) edges among the selected ones.
    pub virtual_used: usize,
}

impl SplitEvent {
    /// Re-targets arcs that entered `vertex` along a moved edge.
    pub fn remap(&self, po: &PartialOrientation) -> PartialOrientation {
        let Some(w) = self.new_vertex else {
            return po.clone();
        };
        po.arcs()
            .map(|a| {
                if a.head == self.vertex && self.moved.contains(&a.edge) {
                    Arc {
                        edge: a.edge,
                        head: w,
                    }
                } else {
                    a
                }
            })
            .collect()
    }

    /// Cap units dropped at `vertex` rather than handed to the new vertex.
    pub fn discarded(&self) -> u32 {
        let handed = if self.new_vertex.is_some() {
            self.grant.total()
        } else {
            0
        };
        self.caps_before.total() - self.caps_after.total() - handed
    }
}

impl fmt::Display for SplitEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let new = self
            .new_vertex
            .map_or_else(|| "-".to_string(), |w| w.to_string());
        let edges = if self.moved.is_empty() {
            "-".to_string()
        } else {
            self.moved
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "split v={} new={} rule={} edges={} grant={},{} virt={}",
            self.vertex, new, self.rule, edges, self.grant.out, self.grant.inn, self.virtual_used
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitTrace {
    pub events: Vec<SplitEvent>,
}

impl SplitTrace {
    /// Maps an orientation of the input instance through every event.
    pub fn remap(&self, po: &PartialOrientation) -> PartialOrientation {
        self.events
            .iter()
            .fold(po.clone(), |acc, ev| ev.remap(&acc))
    }

    /// One line per event.
    pub fn to_text(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Out,
    In,
    Unused,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Real(EdgeId),
    Slack,
}

fn direction(inst: &Instance, po: &PartialOrientation, e: EdgeId, v: VertexId) -> Dir {
    match po.head(e) {
        None => Dir::Unused,
        Some(h) if h == v && inst.other_endpoint(e, v) != v => Dir::In,
        Some(_) => Dir::Out,
    }
}

/// Result of a split or of a full simplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split<E> {
    pub instance: Instance,
    pub a: PartialOrientation,
    pub b: PartialOrientation,
    pub trace: E,
}

/// Splits `v` so that `a` and `b` remain feasible and the instance stays
/// proper. Requires a proper instance and `max(d⁺(v), d⁻(v)) ≥ 2`.
pub fn split_vertex(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
    v: VertexId,
) -> Result<Split<SplitEvent>> {
    if v.0 >= inst.num_vertices() {
        return Err(Error::UnknownVertex(v));
    }
    if !inst.is_proper() {
        return Err(Error::NotProper);
    }
    if !is_feasible(inst, a)? || !is_feasible(inst, b)? {
        return Err(Error::InfeasibleOrientation);
    }
    let caps = inst.caps(v);
    if caps.max() < 2 {
        return Err(Error::Precondition(format!(
            "vertex {v} has caps ({}, {}), nothing to split",
            caps.out, caps.inn
        )));
    }

    let incident: Vec<EdgeId> = inst
        .edge_ids()
        .filter(|&e| {
            let (x, y) = inst.endpoints(e);
            x == v || y == v
        })
        .collect();
    let mut tokens: Vec<(Dir, Dir, Token)> = incident
        .iter()
        .map(|&e| {
            (
                direction(inst, a, e, v),
                direction(inst, b, e, v),
                Token::Real(e),
            )
        })
        .collect();

    let slack = |po: &PartialOrientation| {
        let (out, inn) = po.degrees(inst);
        (caps.out - out[v.0], caps.inn - inn[v.0])
    };
    let (a_out, a_in) = slack(a);
    let (b_out, b_in) = slack(b);
    let (pp, mm) = (a_out.min(b_out), a_in.min(b_in));
    let virtuals = [
        (Dir::Out, Dir::Out, pp),
        (Dir::In, Dir::In, mm),
        (Dir::Out, Dir::Unused, a_out - pp),
        (Dir::In, Dir::Unused, a_in - mm),
        (Dir::Unused, Dir::Out, b_out - pp),
        (Dir::Unused, Dir::In, b_in - mm),
    ];
    for (da, db, count) in virtuals {
        tokens.extend((0..count).map(|_| (da, db, Token::Slack)));
    }

    let (rule, picked) = choose_rule(&tokens).ok_or_else(|| {
        Error::Internal(format!(
            "no splitting rule applies at vertex {v} (caps {}, {}; slack A {a_out}/{a_in}, B {b_out}/{b_in})",
            caps.out, caps.inn
        ))
    })?;
    let grant = rule.grant();
    let moved: Vec<EdgeId> = picked
        .iter()
        .filter_map(|&i| match tokens[i].2 {
            Token::Real(e) => Some(e),
            Token::Slack => None,
        })
        .collect();
    let virtual_used = picked.len() - moved.len();

    let mut new_caps = inst.all_caps().to_vec();
    let mut edges: Vec<(usize, usize)> = inst.edges().iter().map(|&(x, y)| (x.0, y.0)).collect();
    let new_vertex = if moved.is_empty() {
        new_caps[v.0] = Caps::new(caps.out - grant.out, caps.inn - grant.inn);
        None
    } else if moved.len() == incident.len() {
        new_caps[v.0] = grant;
        None
    } else {
        let w = inst.num_vertices();
        new_caps[v.0] = Caps::new(caps.out - grant.out, caps.inn - grant.inn);
        new_caps.push(grant);
        for &e in &moved {
            let (x, y) = &mut edges[e.0];
            if *x == v.0 {
                *x = w;
            } else {
                *y = w;
            }
        }
        let remaining = (incident.len() - moved.len()) as u32;
        let c = &mut new_caps[v.0];
        *c = Caps::new(c.out.min(remaining), c.inn.min(remaining));
        Some(VertexId(w))
    };

    let event = SplitEvent {
        vertex: v,
        new_vertex,
        moved,
        grant,
        caps_before: caps,
        caps_after: new_caps[v.0],
        rule,
        virtual_used,
    };
    let instance = Instance::from_raw(new_caps, edges);
    let (a2, b2) = (event.remap(a), event.remap(b));
    if !instance.is_proper() {
        return Err(Error::Internal(format!(
            "split of {v} left an improper instance ({event})"
        )));
    }
    if !is_feasible(&instance, &a2)? || !is_feasible(&instance, &b2)? {
        return Err(Error::Internal(format!(
            "split of {v} broke an orientation ({event})"
        )));
    }
    Ok(Split {
        instance,
        a: a2,
        b: b2,
        trace: event,
    })
}

/// First applicable rule and the token indices it selects. Within each
/// class real edges come first, in EdgeId order.
fn choose_rule(tokens: &[(Dir, Dir, Token)]) -> Option<(SplitRule, Vec<usize>)> {
    use Dir::{In, Out, Unused};
    let first = |da: Dir, db: Dir| tokens.iter().position(|&(x, y, _)| (x, y) == (da, db));
    let all = |classes: &[(Dir, Dir)]| -> Option<Vec<usize>> {
        classes.iter().map(|&(da, db)| first(da, db)).collect()
    };
    let rules: [(SplitRule, &[(Dir, Dir)]); 7] = [
        (SplitRule::OutOut, &[(Out, Out)]),
        (SplitRule::InIn, &[(In, In)]),
        (SplitRule::Crossed, &[(Out, In), (In, Out)]),
        (SplitRule::ShiftedOut, &[(Unused, Out), (Out, Unused)]),
        (SplitRule::ShiftedIn, &[(Unused, In), (In, Unused)]),
        (
            SplitRule::TripleA,
            &[(Out, In), (Unused, Out), (In, Unused)],
        ),
        (
            SplitRule::TripleB,
            &[(In, Out), (Out, Unused), (Unused, In)],
        ),
    ];
    rules
        .iter()
        .find_map(|&(rule, classes)| all(classes).map(|picked| (rule, picked)))
}

/// Splits vertices (lowest id first) until every cap is 0 or 1. Both
/// orientations are re-checked after every event.
pub fn simplify_instance(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
) -> Result<Split<SplitTrace>> {
    if !inst.is_proper() {
        return Err(Error::NotProper);
    }
    if !is_feasible(inst, a)? || !is_feasible(inst, b)? {
        return Err(Error::InfeasibleOrientation);
    }
    let (dp, dm) = inst.cap_totals();
    let budget = (dp + dm) as usize + inst.num_vertices();

    let mut current = Split {
        instance: inst.clone(),
        a: a.clone(),
        b: b.clone(),
        trace: SplitTrace::default(),
    };
    loop {
        let Some(v) = current
            .instance
            .vertices()
            .find(|&v| current.instance.caps(v).max() >= 2)
        else {
            break;
        };
        if current.trace.events.len() >= budget {
            return Err(Error::Internal(format!(
                "simplification exceeded {budget} events"
            )));
        }
        let step = split_vertex(&current.instance, &current.a, &current.b, v)?;
        current.instance = step.instance;
        current.a = step.a;
        current.b = step.b;
        current.trace.events.push(step.trace);
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arcs(list: &[(usize, usize)]) -> PartialOrientation {
        list.iter()
            .map(|&(e, h)| Arc {
                edge: EdgeId(e),
                head: VertexId(h),
            })
            .collect()
    }

    #[test]
    fn join_two_components_into_path() {
        // 0–1 and 2–3; join 1 and 2
        let inst = Instance::new(
            vec![
                Caps::new(1, 0),
                Caps::new(0, 1),
                Caps::new(1, 0),
                Caps::new(0, 1),
            ],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        let j = join_vertices(&inst, VertexId(1), VertexId(2)).unwrap();
        assert_eq!(j.instance.num_vertices(), 3);
        assert_eq!(j.instance.caps(VertexId(1)), Caps::new(1, 1));
        assert_eq!(j.instance.num_edges(), 2);
        assert_eq!(j.instance.degrees(), vec![1, 2, 1]);
        let po = arcs(&[(0, 1), (1, 3)]);
        assert!(is_feasible(&j.instance, &j.remap(&po)).unwrap());
    }

    #[test]
    fn join_isolated_sums_caps() {
        let inst = Instance::new(vec![Caps::new(1, 0), Caps::new(0, 1)], vec![]).unwrap();
        let j = join_vertices(&inst, VertexId(0), VertexId(1)).unwrap();
        assert_eq!(j.instance.all_caps(), &[Caps::new(1, 1)]);
    }

    #[test]
    fn join_rejects_adjacent() {
        let inst = Instance::new(vec![Caps::new(1, 1); 2], vec![(0, 1)]).unwrap();
        assert_eq!(
            join_vertices(&inst, VertexId(0), VertexId(1)),
            Err(Error::AdjacentVertices(VertexId(0), VertexId(1)))
        );
    }

    #[test]
    fn split_rule_one_out_out() {
        // v = 0 with d⁺ = 2, edges to a = 1 and b = 2
        let inst = Instance::new(
            vec![Caps::new(2, 0), Caps::new(0, 1), Caps::new(0, 1)],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let a = arcs(&[(0, 1), (1, 2)]);
        let b = arcs(&[(0, 1)]);
        let s = split_vertex(&inst, &a, &b, VertexId(0)).unwrap();
        let ev = &s.trace;
        assert_eq!(ev.rule, SplitRule::OutOut);
        assert_eq!(ev.moved, vec![EdgeId(0)]);
        assert_eq!(ev.grant, Caps::new(1, 0));
        assert_eq!(ev.new_vertex, Some(VertexId(3)));
        assert_eq!(s.instance.caps(VertexId(0)), Caps::new(1, 0));
        assert_eq!(s.instance.endpoints(EdgeId(0)), (VertexId(3), VertexId(1)));
        assert!(is_feasible(&s.instance, &s.a).unwrap());
        assert!(is_feasible(&s.instance, &s.b).unwrap());
        assert!(s.instance.is_proper());
        assert_eq!(
            ev.to_string(),
            "split v=1 new=4 rule=1 edges=1 grant=1,0 virt=0"
        );
    }

    #[test]
    fn split_requires_large_cap() {
        let inst = Instance::new(
            vec![Caps::new(1, 1), Caps::new(1, 1), Caps::new(1, 1)],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let a = arcs(&[(0, 0), (1, 2)]);
        let b = arcs(&[(0, 1), (1, 0)]);
        assert!(matches!(
            split_vertex(&inst, &a, &b, VertexId(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn split_rejects_improper() {
        let inst = Instance::new(vec![Caps::new(3, 0), Caps::new(0, 1)], vec![(0, 1)]).unwrap();
        let empty = PartialOrientation::new();
        assert_eq!(
            split_vertex(&inst, &empty, &empty, VertexId(0)),
            Err(Error::NotProper)
        );
    }

    #[test]
    fn split_with_only_slack_drops_caps() {
        // both orientations empty: every selected edge is virtual
        let inst = Instance::new(
            vec![Caps::new(2, 0), Caps::new(0, 1), Caps::new(0, 1)],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let empty = PartialOrientation::new();
        let s = split_vertex(&inst, &empty, &empty, VertexId(0)).unwrap();
        assert_eq!(s.trace.new_vertex, None);
        assert_eq!(s.trace.virtual_used, 1);
        assert_eq!(s.instance.caps(VertexId(0)), Caps::new(1, 0));
        assert_eq!(s.trace.discarded(), 1);
    }

    #[test]
    fn simplify_already_simple_is_identity() {
        let inst = Instance::new(vec![Caps::new(1, 1); 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let a = arcs(&[(0, 1)]);
        let s = simplify_instance(&inst, &a, &a).unwrap();
        assert_eq!(s.instance, inst);
        assert!(s.trace.events.is_empty());
        assert_eq!(s.a, a);
    }

    #[test]
    fn simplify_splits_fan_out_once() {
        // u = 0 with d⁺ = 2 towards x = 1, y = 2
        let inst = Instance::new(
            vec![Caps::new(2, 0), Caps::new(0, 1), Caps::new(0, 1)],
            vec![(0, 1), (0, 2)],
        )
        .unwrap();
        let a = arcs(&[(0, 1), (1, 2)]);
        let b = arcs(&[(0, 1)]);
        let s = simplify_instance(&inst, &a, &b).unwrap();
        assert_eq!(s.trace.events.len(), 1);
        assert_eq!(s.instance.num_vertices(), 4);
        assert!(s.instance.is_simple() && s.instance.is_proper());
        assert_eq!(s.instance.num_edges(), 2);
        assert_eq!(s.a.len(), 2);
        assert!(is_feasible(&s.instance, &s.a).unwrap());
        assert!(is_feasible(&s.instance, &s.b).unwrap());
        assert_eq!(s.trace.remap(&a), s.a);
    }

    #[test]
    fn split_then_join_restores_feasibility() {
        let inst = Instance::new(
            vec![
                Caps::new(2, 1),
                Caps::new(0, 1),
                Caps::new(1, 1),
                Caps::new(1, 0),
            ],
            vec![(0, 1), (0, 2), (3, 0)],
        )
        .unwrap();
        let a = arcs(&[(0, 1), (1, 2), (2, 0)]);
        let b = arcs(&[(1, 2)]);
        let s = split_vertex(&inst, &a, &b, VertexId(0)).unwrap();
        let w = s.trace.new_vertex.expect("a real edge moves");
        let j = join_vertices(&s.instance, VertexId(0), w).unwrap();
        assert!(is_feasible(&j.instance, &j.remap(&s.a)).unwrap());
        assert!(is_feasible(&j.instance, &j.remap(&s.b)).unwrap());
        assert_eq!(j.instance.edges(), inst.edges());
    }
}
