//! Feasible flows in networks with lower and upper arc bounds.
//!
//! Lower bounds are eliminated the usual way: every arc keeps capacity
//! `upper - lower`, the mandatory `lower` units become node imbalances
//! served by an auxiliary source and sink, and a return arc `sink → source`
//! of unbounded capacity turns the problem into a circulation. The network
//! is feasible iff the auxiliary max-flow saturates every auxiliary arc.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    num_nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            num_nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    /// Appends an arc and returns its index. Bounds are checked by
    /// [`FlowNetwork::validate`].
    pub fn add_arc(&mut self, tail: usize, head: usize, lower: u64, upper: u64) -> usize {
        self.arcs.push(FlowArc {
            tail,
            head,
            lower,
            upper,
        });
        self.arcs.len() - 1
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn validate(&self) -> Result<()> {
        if self.source >= self.num_nodes || self.sink >= self.num_nodes {
            return Err(Error::MalformedNetwork("terminal out of range".into()));
        }
        if self.source == self.sink {
            return Err(Error::MalformedNetwork("source equals sink".into()));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= self.num_nodes || a.head >= self.num_nodes {
                return Err(Error::MalformedNetwork(format!(
                    "arc {i} has an endpoint out of range"
                )));
            }
            if a.lower > a.upper {
                return Err(Error::MalformedNetwork(format!(
                    "arc {i} has lower bound {} above upper bound {}",
                    a.lower, a.upper
                )));
            }
        }
        Ok(())
    }
}

/// Finds a flow from source to sink (of any value) that conserves flow at
/// every other node and respects all arc bounds. Returns the per-arc flow,
/// or `None` when no such flow exists.
pub fn solve_feasible_flow(net: &FlowNetwork) -> Result<Option<Vec<u64>>> {
    net.validate()?;
    let n = net.num_nodes;
    let (aux_source, aux_sink) = (n, n + 1);
    let mut dinic = Dinic::new(n + 2);

    let mut imbalance = vec![0i128; n];
    let mut handles = Vec::with_capacity(net.arcs.len());
    let mut total_upper: u64 = 0;
    for a in &net.arcs {
        handles.push(dinic.add_edge(a.tail, a.head, a.upper - a.lower));
        imbalance[a.head] += i128::from(a.lower);
        imbalance[a.tail] -= i128::from(a.lower);
        total_upper = total_upper.saturating_add(a.upper);
    }
    dinic.add_edge(net.sink, net.source, total_upper);

    let mut required: u64 = 0;
    for (v, &b) in imbalance.iter().enumerate() {
        if b > 0 {
            let b = b as u64;
            dinic.add_edge(aux_source, v, b);
            required += b;
        } else if b < 0 {
            dinic.add_edge(v, aux_sink, (-b) as u64);
        }
    }

    if dinic.max_flow(aux_source, aux_sink) != required {
        return Ok(None);
    }
    Ok(Some(
        net.arcs
            .iter()
            .zip(handles)
            .map(|(a, h)| a.lower + dinic.flow(h))
            .collect(),
    ))
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Dinic's blocking-flow max-flow over an adjacency-list residual graph.
#[derive(Debug, Clone)]
pub(crate) struct Dinic {
    graph: Vec<Vec<Edge>>,
    original: Vec<(usize, usize, u64)>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    pub(crate) fn new(n: usize) -> Self {
        Dinic {
            graph: vec![Vec::new(); n],
            original: Vec::new(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Edge { to, cap, rev: bwd });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: fwd,
        });
        self.original.push((from, fwd, cap));
        self.original.len() - 1
    }

    pub(crate) fn flow(&self, handle: usize) -> u64 {
        let (from, idx, cap) = self.original[handle];
        cap - self.graph[from][idx].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u64) -> u64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.graph[v].len() {
            let i = self.iter[v];
            let Edge { to, cap, rev } = self.graph[v][i];
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.graph[v][i].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conserves(net: &FlowNetwork, flow: &[u64]) -> bool {
        let mut bal = vec![0i128; net.num_nodes()];
        for (a, &f) in net.arcs().iter().zip(flow) {
            if f < a.lower || f > a.upper {
                return false;
            }
            bal[a.head] += f as i128;
            bal[a.tail] -= f as i128;
        }
        bal.iter()
            .enumerate()
            .all(|(v, &b)| v == net.source || v == net.sink || b == 0)
    }

    #[test]
    fn zero_flow_is_feasible() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 0, 5);
        let flow = solve_feasible_flow(&net).unwrap().unwrap();
        assert_eq!(flow, vec![0]);
    }

    #[test]
    fn inverted_bounds_rejected() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 2, 1);
        assert!(matches!(
            solve_feasible_flow(&net),
            Err(Error::MalformedNetwork(_))
        ));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 7, 0, 1);
        assert!(solve_feasible_flow(&net).is_err());
        assert!(solve_feasible_flow(&FlowNetwork::new(2, 1, 1)).is_err());
    }

    // Star c–l1, c–l2, c–l3: three units forced out of the source, leaves
    // absorb nothing and c absorbs at most one. c's lower bound (3) is
    // dropped here since [3, 1] would not validate.
    #[test]
    fn star_network_infeasible() {
        // nodes: 0 source, 1 sink, 2..5 edge nodes, 5 = c, 6..9 leaves
        let mut net = FlowNetwork::new(9, 0, 1);
        for e in 0..3 {
            net.add_arc(0, 2 + e, 1, 1);
            net.add_arc(2 + e, 5, 0, 1);
            net.add_arc(2 + e, 6 + e, 0, 1);
        }
        net.add_arc(5, 1, 0, 1);
        for l in 0..3 {
            net.add_arc(6 + l, 1, 0, 0);
        }
        assert_eq!(solve_feasible_flow(&net).unwrap(), None);
    }

    #[test]
    fn lower_bounds_are_met() {
        // 0 -> 2 -> 1 with a mandatory 3 units in the middle and a bypass
        let mut net = FlowNetwork::new(4, 0, 1);
        net.add_arc(0, 2, 0, 5);
        net.add_arc(2, 3, 3, 4);
        net.add_arc(3, 1, 0, 10);
        let flow = solve_feasible_flow(&net).unwrap().unwrap();
        assert!(conserves(&net, &flow));
        assert!(flow[1] >= 3);
    }

    #[test]
    fn dinic_reference_value() {
        let mut d = Dinic::new(6);
        for &(a, b, c) in &[
            (0, 1, 10),
            (0, 2, 10),
            (1, 3, 4),
            (1, 4, 8),
            (2, 4, 9),
            (3, 5, 10),
            (4, 3, 6),
            (4, 5, 10),
        ] {
            d.add_edge(a, b, c);
        }
        assert_eq!(d.max_flow(0, 5), 19);
    }
}
