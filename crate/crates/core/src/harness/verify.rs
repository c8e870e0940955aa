//! Property suites comparing the algorithms with brute-force oracles.
//!
//! Each suite draws its cases from an independent stream of the given seed
//! and reports the first counterexample in instance-file format.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::bench::{run_bench, BenchConfig};
use super::format::{parse_instance, parse_orientation, write_instance, write_orientation};
use super::generate::{
    generate_with, random_feasible_orientation, random_small_instance, rng_for, ConstraintModel,
    GraphModel,
};
use crate::analysis::max_packing_bruteforce;
use crate::analysis::{
    build_h, check_exchange, common_subgraph_components, exact_opt, overlap, Ratio,
    DEFAULT_EDGE_LIMIT,
};
use crate::error::Result;
use crate::feasibility::total_orientation;
use crate::model::{is_feasible, Caps, EdgeId, Instance, PartialOrientation};
use crate::search::{find_improvement_rule2, find_improving_set_rule1, local_search, SearchParams};
use crate::setpacking::{build_setpacking, orientation_to_family, Subfamily};
use crate::simplify::{simplify_instance, split_vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// A tenth of the cases, for quick checks.
    Small,
    Full,
}

impl Scale {
    fn count(self, full: usize) -> usize {
        match self {
            Scale::Small => (full / 10).max(1),
            Scale::Full => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
    /// Instance file of the first failing case, with the relevant
    /// orientations as comments.
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures
        )?;
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(dump());
            }
        }
    }

    /// Records an `Err` from library code as a failure.
    fn record_result(&mut self, outcome: Result<bool>, dump: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, dump),
            Err(e) => self.record(false, || format!("# error: {e}\n{}", dump())),
        }
    }

    fn finish(self, detail: String) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            detail,
            counterexample: self.first,
        }
    }
}

/// Instance file followed by labelled orientations as comment lines.
pub fn dump(inst: &Instance, orientations: &[(&str, &PartialOrientation)]) -> String {
    let mut s = write_instance(inst);
    for (label, po) in orientations {
        s.push_str(&format!("# {label}\n"));
        for line in write_orientation(po).lines() {
            s.push_str(&format!("# {line}\n"));
        }
    }
    s
}

fn suite_rng(seed: u64, suite: u64, trial: usize) -> ChaCha8Rng {
    rng_for(seed, (suite << 32) | trial as u64)
}

/// Feasibility of orienting every edge, by trying all `2^m` directions.
fn orientable_by_enumeration(caps: &[Caps], edges: &[(usize, usize)]) -> bool {
    let n = caps.len();
    let (mut out, mut inn) = (vec![0u32; n], vec![0u32; n]);
    (0u32..1 << edges.len()).any(|mask| {
        out.fill(0);
        inn.fill(0);
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (t, h) = if mask >> i & 1 == 1 { (v, u) } else { (u, v) };
            out[t] += 1;
            inn[h] += 1;
        }
        (0..n).all(|v| out[v] <= caps[v].out && inn[v] <= caps[v].inn)
    })
}

fn canonical_form(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut relabelled: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            relabelled.sort_unstable();
            relabelled
        })
        .min()
        .expect("at least one permutation")
}

fn is_connected(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    !seen.contains(&false)
}

/// Multigraphs on `1..=max_vertices` vertices with at most `max_edges`
/// edges, one per isomorphism class, as `(vertex count, edges)`. With
/// `connected`, only connected ones; otherwise those without isolated
/// vertices and with at least one edge.
pub fn multigraph_classes(
    max_vertices: usize,
    max_edges: usize,
    connected: bool,
) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut classes = BTreeSet::new();
    if connected && max_vertices >= 1 {
        classes.insert((1, Vec::new()));
    }
    for k in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        for m in 1..=max_edges {
            for edges in pairs.iter().copied().combinations_with_replacement(m) {
                let keep = if connected {
                    is_connected(k, &edges)
                } else {
                    let mut covered = vec![false; k];
                    for &(u, v) in &edges {
                        covered[u] = true;
                        covered[v] = true;
                    }
                    !covered.contains(&false)
                };
                if keep {
                    classes.insert((k, canonical_form(&edges, &perms)));
                }
            }
        }
    }
    classes.into_iter().collect()
}

fn caps_from_code(k: usize, mut code: usize, values: u32) -> Vec<Caps> {
    let mut caps = Vec::with_capacity(k);
    for _ in 0..k {
        let c = (code % (values * values) as usize) as u32;
        code /= (values * values) as usize;
        caps.push(Caps::new(c / values, c % values));
    }
    caps
}

/// The flow oracle against direction enumeration on every connected
/// multigraph (up to isomorphism), every cap assignment in {0, 1, 2} and
/// every edge subset. Cap assignments range over all labellings, so
/// isomorphic copies add nothing.
pub fn oracle_equivalence(scale: Scale, _seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("flow oracle equivalence");
    let (max_v, max_e) = match scale {
        Scale::Small => (4, 4),
        Scale::Full => (5, 5),
    };
    let graphs = multigraph_classes(max_v, max_e, true);
    for (k, edges) in &graphs {
        let m = edges.len();
        for code in 0..9usize.pow(*k as u32) {
            let caps = caps_from_code(*k, code, 3);
            let inst = Instance::from_raw(caps.clone(), edges.clone());
            for mask in 0u32..1 << m {
                let subset: Vec<EdgeId> =
                    (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
                let chosen: Vec<(usize, usize)> = subset.iter().map(|e| edges[e.0]).collect();
                let expected = orientable_by_enumeration(&caps, &chosen);
                let got =
                    total_orientation(&inst, subset.iter().copied()).map(|found| match found {
                        Some(po) => {
                            expected
                                && po.len() == subset.len()
                                && is_feasible(&inst, &po).unwrap_or(false)
                        }
                        None => !expected,
                    });
                t.record_result(got, || {
                    let ids = subset.iter().map(ToString::to_string).join(",");
                    format!("# subset {{{ids}}}\n{}", dump(&inst, &[]))
                });
            }
        }
    }
    t.finish(format!(
        "{} connected multigraphs up to isomorphism",
        graphs.len()
    ))
}

/// Largest disjoint subfamily of the 3-set family against `exact_opt`.
pub fn reduction_equivalence(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("reduction equivalence");
    for trial in 0..scale.count(300) {
        let mut rng = suite_rng(seed, 2, trial);
        let inst =
            random_small_instance(&mut rng, 5, 6, ConstraintModel::General { max_d: 2 }, false);
        let packing = max_packing_bruteforce(&build_setpacking(&inst));
        let outcome = exact_opt(&inst, DEFAULT_EDGE_LIMIT).map(|opt| opt.len() == packing);
        t.record_result(outcome, || {
            format!("# max packing {packing}\n{}", dump(&inst, &[]))
        });
    }
    t.finish(String::new())
}

/// Local search with rule-2 radius `m` reaches the optimum.
pub fn full_radius_exactness(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("exactness at full radius");
    for trial in 0..scale.count(300) {
        let mut rng = suite_rng(seed, 3, trial);
        let inst =
            random_small_instance(&mut rng, 6, 8, ConstraintModel::General { max_d: 2 }, false);
        let params = SearchParams::with_radii(4, inst.num_edges());
        let mut found = PartialOrientation::new();
        let outcome = local_search(&inst, &params).and_then(|report| {
            found = report.orientation;
            Ok(exact_opt(&inst, DEFAULT_EDGE_LIMIT)?.len() == found.len())
        });
        t.record_result(outcome, || dump(&inst, &[("local search", &found)]));
    }
    t.finish(String::new())
}

/// `|OPT| <= 3 |F|` at the default radii; the worst ratio is reported.
pub fn maximality_bound(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("maximality bound");
    let mut worst = Ratio::new(1, 1);
    let mut worst_case = None;
    let four_thirds = Ratio::new(4, 3);
    let mut above_four_thirds = 0;
    for trial in 0..scale.count(1000) {
        let mut rng = suite_rng(seed, 4, trial);
        let constraints = if trial % 2 == 0 {
            ConstraintModel::Simple
        } else {
            ConstraintModel::General { max_d: 2 }
        };
        let inst = random_small_instance(&mut rng, 8, 12, constraints, false);
        let mut found = PartialOrientation::new();
        let mut opt = PartialOrientation::new();
        let outcome = local_search(&inst, &SearchParams::default()).and_then(|report| {
            found = report.orientation;
            opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT)?;
            Ok(opt.len() <= 3 * found.len())
        });
        let ratio = Ratio::new(opt.len() as u64, found.len() as u64);
        if ratio > four_thirds {
            above_four_thirds += 1;
        }
        if ratio > worst {
            worst = ratio;
            worst_case = Some(dump(&inst, &[("local search", &found), ("optimum", &opt)]));
        }
        t.record_result(outcome, || {
            dump(&inst, &[("local search", &found), ("optimum", &opt)])
        });
    }
    let mut out = t.finish(format!(
        "worst ratio {worst}, {above_four_thirds} cases above 4/3"
    ));
    if out.counterexample.is_none() && worst > four_thirds {
        out.detail.push_str("\n# worst case\n");
        out.detail.push_str(&worst_case.unwrap_or_default());
    }
    out
}

/// Shape of the common subgraph, degrees of the exchange graph and the
/// exchange property on random subsets of its B side.
pub fn exchange_graph(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("exchange graph");
    let mut max_degree = 0;
    let mut exchanges = 0;
    for trial in 0..scale.count(500) {
        let mut rng = suite_rng(seed, 5, trial);
        let inst = loop {
            let inst = random_small_instance(&mut rng, 10, 12, ConstraintModel::Simple, true);
            if inst.num_edges() > 0 {
                break inst;
            }
        };
        let (a, b) = if trial % 3 == 0 {
            let found = local_search(&inst, &SearchParams::default()).map(|r| r.orientation);
            let opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT);
            match (found, opt) {
                (Ok(f), Ok(o)) => (f, o),
                (Err(e), _) | (_, Err(e)) => {
                    t.record(false, || format!("# error: {e}\n{}", dump(&inst, &[])));
                    continue;
                }
            }
        } else {
            let da = rng.gen_range(0.5..=1.0);
            let db = rng.gen_range(0.5..=1.0);
            (
                random_feasible_orientation(&mut rng, &inst, da),
                random_feasible_orientation(&mut rng, &inst, db),
            )
        };
        let case = || dump(&inst, &[("A", &a), ("B", &b)]);
        let shapes_ok = common_subgraph_components(&inst, &a, &b)
            .iter()
            .all(|s| s.is_path_or_cycle());
        let h = match build_h(&inst, &a, &b) {
            Ok(h) => h,
            Err(e) => {
                t.record(false, || format!("# build_h: {e}\n{}", case()));
                continue;
            }
        };
        max_degree = max_degree.max(h.max_degree());
        t.record(shapes_ok && h.max_degree() <= 4, || {
            format!(
                "# path/cycle {shapes_ok}, max degree {}\n{}",
                h.max_degree(),
                case()
            )
        });
        for _ in 0..20 {
            let x: Vec<usize> = (0..h.b_side.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let blocked = h.neighborhood(&x).len();
            let expected = a.len() - blocked + x.len();
            let outcome = check_exchange(&inst, &a, &h, &x).and_then(|w| match w {
                Some(po) => Ok(po.len() == expected && is_feasible(&inst, &po)?),
                None => Ok(false),
            });
            exchanges += 1;
            t.record_result(outcome, || {
                let ids = x.iter().map(|&j| h.b_side[j].to_string()).join(",");
                format!("# exchange X = {{{ids}}}\n{}", case())
            });
        }
    }
    t.finish(format!("max H degree {max_degree}, {exchanges} exchanges"))
}

/// `|OPT̄ \ F̄| <= 3 |F̄ \ OPT̄|` for local optima at rule-2 radius 4 on
/// simple instances; the worst quotient is reported.
pub fn exchange_quotient(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("exchange quotient");
    let mut worst = Ratio::new(0, 1);
    for trial in 0..scale.count(500) {
        let mut rng = suite_rng(seed, 10, trial);
        let inst = random_small_instance(&mut rng, 8, 10, ConstraintModel::Simple, trial % 2 == 0);
        let mut found = PartialOrientation::new();
        let mut opt = PartialOrientation::new();
        let outcome = local_search(&inst, &SearchParams::default()).and_then(|report| {
            found = report.orientation;
            opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT)?;
            let o = overlap(&found, &opt);
            let q = Ratio::new(o.only_opt as u64, o.only_found as u64);
            worst = worst.max(q);
            Ok(o.only_opt <= 3 * o.only_found)
        });
        t.record_result(outcome, || {
            dump(&inst, &[("local search", &found), ("optimum", &opt)])
        });
    }
    t.finish(format!("worst quotient {worst}"))
}

fn random_proper_instance<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, max_d: u32) -> Instance {
    loop {
        let max_d = rng.gen_range(1..=max_d);
        let inst =
            random_small_instance(rng, max_n, max_m, ConstraintModel::General { max_d }, true);
        if inst.num_edges() > 0 {
            return inst;
        }
    }
}

/// Splits step by step, checking every intermediate instance, then
/// compares the optimum before and after.
pub fn splitting(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("splitting");
    let mut total_events = 0;
    for trial in 0..scale.count(500) {
        let mut rng = suite_rng(seed, 6, trial);
        let inst = random_proper_instance(&mut rng, 6, 8, 3);
        let a = random_feasible_orientation(&mut rng, &inst, 0.8);
        let b_is_opt = trial % 2 == 0;
        let b = if b_is_opt {
            match exact_opt(&inst, DEFAULT_EDGE_LIMIT) {
                Ok(o) => o,
                Err(e) => {
                    t.record(false, || format!("# error: {e}\n{}", dump(&inst, &[])));
                    continue;
                }
            }
        } else {
            random_feasible_orientation(&mut rng, &inst, 0.8)
        };
        let case = || dump(&inst, &[("A", &a), ("B", &b)]);
        let outcome = check_splitting(&inst, &a, &b, b_is_opt).map(|(ok, events)| {
            total_events += events;
            ok
        });
        t.record_result(outcome, case);
    }
    t.finish(format!("{total_events} split events"))
}

fn check_splitting(
    inst: &Instance,
    a: &PartialOrientation,
    b: &PartialOrientation,
    b_is_opt: bool,
) -> Result<(bool, usize)> {
    let (dp, dm) = inst.cap_totals();
    let budget = (dp + dm) as usize + inst.num_vertices();
    let m = inst.num_edges();
    let (mut cur, mut ca, mut cb) = (inst.clone(), a.clone(), b.clone());
    let mut events = Vec::new();
    loop {
        let Some(v) = cur.vertices().find(|&v| cur.caps(v).max() >= 2) else {
            break;
        };
        let step = split_vertex(&cur, &ca, &cb, v)?;
        events.push(step.trace);
        let ok = step.instance.is_proper()
            && step.instance.num_edges() == m
            && is_feasible(&step.instance, &step.a)?
            && is_feasible(&step.instance, &step.b)?
            && step.a.len() == a.len()
            && step.b.len() == b.len();
        if !ok || events.len() > budget {
            return Ok((false, events.len()));
        }
        (cur, ca, cb) = (step.instance, step.a, step.b);
    }
    let whole = simplify_instance(inst, a, b)?;
    let consistent =
        whole.instance == cur && whole.a == ca && whole.b == cb && whole.trace.events == events;
    let shape = cur.is_simple() && cur.is_proper();
    let before = exact_opt(inst, DEFAULT_EDGE_LIMIT)?.len();
    let after = exact_opt(&cur, DEFAULT_EDGE_LIMIT)?.len();
    let opt_ok = after <= before && (!b_is_opt || after == before);
    Ok((consistent && shape && opt_ok, events.len()))
}

fn rule2_local_optimum<R: Rng>(
    rng: &mut R,
    inst: &Instance,
    radius: usize,
) -> Result<PartialOrientation> {
    let mut f = random_feasible_orientation(rng, inst, 0.6);
    while let Some(better) = find_improvement_rule2(inst, &f, radius)? {
        f = better;
    }
    Ok(f)
}

/// Rule-2 local optima at radius 3 stay local optima after simplifying
/// against an optimum.
pub fn local_opt_preservation(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("local optimum preservation");
    for trial in 0..scale.count(100) {
        let mut rng = suite_rng(seed, 7, trial);
        let inst = random_proper_instance(&mut rng, 6, 8, 3);
        let mut f = PartialOrientation::new();
        let mut opt = PartialOrientation::new();
        let outcome = (|| {
            f = rule2_local_optimum(&mut rng, &inst, 3)?;
            opt = exact_opt(&inst, DEFAULT_EDGE_LIMIT)?;
            let s = simplify_instance(&inst, &f, &opt)?;
            Ok(s.a.len() == f.len() && find_improvement_rule2(&s.instance, &s.a, 3)?.is_none())
        })();
        t.record_result(outcome, || dump(&inst, &[("F", &f), ("optimum", &opt)]));
    }
    t.finish(String::new())
}

/// Deleting family members never creates a rule-1 improving set.
pub fn monotonicity(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("monotonicity");
    let wanted = scale.count(200);
    let mut trial = 0;
    let mut removed_total = 0;
    while t.cases < wanted && trial < 100 * wanted {
        let mut rng = suite_rng(seed, 8, trial);
        trial += 1;
        let inst = random_small_instance(
            &mut rng,
            6,
            10,
            ConstraintModel::General { max_d: 2 },
            false,
        );
        let sp = build_setpacking(&inst);
        let f = if rng.gen_bool(0.5) {
            random_feasible_orientation(&mut rng, &inst, 0.9)
        } else {
            match local_search(&inst, &SearchParams::with_radii(3, 3)) {
                Ok(r) => r.orientation,
                Err(e) => {
                    t.record(false, || format!("# error: {e}\n{}", dump(&inst, &[])));
                    continue;
                }
            }
        };
        let f0 = match orientation_to_family(&inst, &sp, &f) {
            Ok(f0) => f0,
            Err(e) => {
                t.record(false, || {
                    format!("# error: {e}\n{}", dump(&inst, &[("F", &f)]))
                });
                continue;
            }
        };
        if find_improving_set_rule1(&sp, &f0, 3).is_some() {
            continue;
        }
        let mut others: Vec<_> = sp.set_ids().filter(|s| !f0.contains(s)).collect();
        others.shuffle(&mut rng);
        let k = (others.len() as f64 * 0.2).round() as usize;
        let removed: Subfamily = others.into_iter().take(k).collect();
        removed_total += removed.len();
        let reduced = sp.without_sets(&removed);
        t.record(find_improving_set_rule1(&reduced, &f0, 3).is_none(), || {
            let ids = removed.iter().map(ToString::to_string).join(",");
            format!("# removed {ids}\n{}", dump(&inst, &[("F", &f)]))
        });
    }
    t.finish(format!("{removed_total} sets removed"))
}

/// Serialization round trips and repeated seeded runs.
pub fn determinism(scale: Scale, seed: u64) -> SuiteOutcome {
    let mut t = Tally::new("determinism and round trips");
    for trial in 0..scale.count(200) {
        let mut rng = suite_rng(seed, 9, trial);
        let n = rng.gen_range(1..=12);
        let graph = if trial % 2 == 0 {
            GraphModel::ErdosRenyi {
                n,
                p: rng.gen_range(0.0..=1.0),
            }
        } else {
            GraphModel::RandomMulti {
                n: n.max(2),
                m: rng.gen_range(0..=20),
            }
        };
        let constraints = ConstraintModel::General {
            max_d: rng.gen_range(1..=3),
        };
        let inst = match generate_with(&mut rng, graph, constraints, trial % 3 == 0) {
            Ok(i) => i,
            Err(e) => {
                t.record(false, || format!("# generator error: {e}"));
                continue;
            }
        };
        let po = random_feasible_orientation(&mut rng, &inst, 0.7);
        let text = write_instance(&inst);
        let ok = match parse_instance(&text) {
            Ok(back) => {
                let otext = write_orientation(&po);
                back == inst
                    && write_instance(&back) == text
                    && parse_orientation(&otext, &back)
                        .is_ok_and(|p| p == po && write_orientation(&p) == otext)
            }
            Err(_) => false,
        };
        t.record(ok, || dump(&inst, &[("orientation", &po)]));
    }
    for trial in 0..scale.count(20) {
        let mut rng = suite_rng(seed, 11, trial);
        let inst = random_small_instance(
            &mut rng,
            10,
            20,
            ConstraintModel::General { max_d: 2 },
            false,
        );
        let params = SearchParams {
            seed: Some(rng.gen()),
            ..SearchParams::default()
        };
        let run = || local_search(&inst, &params).map(|r| write_orientation(&r.orientation));
        let outcome = run().and_then(|x| Ok(x == run()?));
        t.record_result(outcome, || dump(&inst, &[]));
    }
    let cfg = BenchConfig {
        n: 7,
        trials: scale.count(20),
        seed,
        ..BenchConfig::default()
    };
    let outcome = run_bench(&cfg).and_then(|x| {
        let y = run_bench(&cfg)?;
        Ok(x.to_text() == y.to_text() && x.to_jsonl() == y.to_jsonl())
    });
    t.record_result(outcome, || format!("# bench {cfg:?}\n"));
    t.finish(String::new())
}

pub type SuiteFn = fn(Scale, u64) -> SuiteOutcome;

/// Every suite, in acceptance order, followed by the exchange quotient.
pub const SUITES: [(&str, SuiteFn); 10] = [
    ("1", oracle_equivalence),
    ("2", reduction_equivalence),
    ("3", full_radius_exactness),
    ("4", maximality_bound),
    ("5", exchange_graph),
    ("6", splitting),
    ("7", local_opt_preservation),
    ("8", monotonicity),
    ("9", determinism),
    ("q", exchange_quotient),
];

pub fn run_all(scale: Scale, seed: u64) -> Vec<SuiteOutcome> {
    SUITES.iter().map(|(_, run)| run(scale, seed)).collect()
}
