//! Seeded random instances and orientations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{make_proper, Arc, Caps, Instance, PartialOrientation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    /// Every pair of distinct vertices is an edge with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// `m` edges with independently uniform endpoint pairs; parallel edges
    /// allowed.
    RandomMulti { n: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintModel {
    /// Caps uniform in {0, 1}.
    Simple,
    /// Caps uniform in {0, ..., max_d}.
    General { max_d: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub graph: GraphModel,
    pub constraints: ConstraintModel,
    pub seed: u64,
    /// Post-process with [`make_proper`].
    pub proper: bool,
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    generate_with(&mut rng, spec.graph, spec.constraints, spec.proper)
}

pub fn generate_with<R: Rng>(
    rng: &mut R,
    graph: GraphModel,
    constraints: ConstraintModel,
    proper: bool,
) -> Result<Instance> {
    let (n, edges) = match graph {
        GraphModel::ErdosRenyi { n, p } => {
            if n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Precondition(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (n, edges)
        }
        GraphModel::RandomMulti { n, m } => {
            if n == 0 || (n == 1 && m > 0) {
                return Err(Error::Precondition(format!(
                    "cannot place {m} edges on {n} vertices"
                )));
            }
            let edges = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let mut v = rng.gen_range(0..n - 1);
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect();
            (n, edges)
        }
    };
    let max_d = match constraints {
        ConstraintModel::Simple => 1,
        ConstraintModel::General { max_d } => max_d,
    };
    let caps = (0..n)
        .map(|_| Caps::new(rng.gen_range(0..=max_d), rng.gen_range(0..=max_d)))
        .collect();
    let inst = Instance::new(caps, edges)?;
    Ok(if proper {
        make_proper(&inst).instance
    } else {
        inst
    })
}

/// Small random multigraph with `2..=max_n` vertices and `1..=max_m` edges.
pub fn random_small_instance<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_m: usize,
    constraints: ConstraintModel,
    proper: bool,
) -> Instance {
    let n = rng.gen_range(2..=max_n.max(2));
    let m = rng.gen_range(1..=max_m.max(1));
    generate_with(rng, GraphModel::RandomMulti { n, m }, constraints, proper)
        .expect("parameters are in range")
}

/// Visits edges in random order and adds each, in a random direction that
/// keeps the orientation feasible, with probability `density`.
pub fn random_feasible_orientation<R: Rng>(
    rng: &mut R,
    inst: &Instance,
    density: f64,
) -> PartialOrientation {
    let n = inst.num_vertices();
    let (mut out, mut inn) = (vec![0u32; n], vec![0u32; n]);
    let mut order: Vec<_> = inst.edge_ids().collect();
    order.shuffle(rng);
    let mut po = PartialOrientation::new();
    for e in order {
        if !rng.gen_bool(density) {
            continue;
        }
        let (u, v) = inst.endpoints(e);
        let mut dirs = [(u, v), (v, u)];
        if rng.gen_bool(0.5) {
            dirs.swap(0, 1);
        }
        if let Some(&(tail, head)) = dirs
            .iter()
            .find(|(t, h)| out[t.0] < inst.dplus(*t) && inn[h.0] < inst.dminus(*h))
        {
            out[tail.0] += 1;
            inn[head.0] += 1;
            po.set(Arc { edge: e, head });
        }
    }
    po
}
