//! Two-rule local search.
//!
//! Rule 1 looks for an improving set of bounded size in the set-packing
//! view. Rule 2 looks for a larger partial orientation whose undirected edge
//! set differs from the current one in a bounded number of edges, and lets
//! the total-orientation oracle choose directions. The search stops when
//! neither rule can improve.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::total_orientation;
use crate::model::{is_feasible, EdgeId, Instance, PartialOrientation};
use crate::setpacking::{
    blocking_sets, build_setpacking, family_to_orientation, is_improving_set,
    orientation_to_family, SetId, SetPackingInstance, Subfamily,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleOrder {
    Rule1First,
    Rule2First,
    /// Switches the rule tried first after every iteration, starting with
    /// rule 2.
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchParams {
    /// Largest improving set rule 1 considers.
    pub rule1_max_size: usize,
    /// Largest undirected symmetric difference rule 2 considers.
    pub rule2_radius: usize,
    pub rule_order: RuleOrder,
    /// `None` enumerates rule-2 candidates in EdgeId order; `Some(s)` uses
    /// a fixed pseudo-random edge order derived from `s`.
    pub seed: Option<u64>,
    /// Maximum number of improvement steps.
    pub iteration_cap: Option<usize>,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            rule1_max_size: 4,
            rule2_radius: 4,
            rule_order: RuleOrder::Rule2First,
            seed: None,
            iteration_cap: None,
        }
    }
}

impl SearchParams {
    pub fn with_radii(rule1_max_size: usize, rule2_radius: usize) -> Self {
        SearchParams {
            rule1_max_size,
            rule2_radius,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Rule1,
    Rule2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub size_before: usize,
    pub size_after: usize,
    /// Candidates examined by every rule tried in this iteration.
    pub examined: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Termination {
    LocalOptimum,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub orientation: PartialOrientation,
    pub steps: Vec<Step>,
    pub terminated: Termination,
    /// Candidates examined by the final, unsuccessful round.
    pub final_examined: usize,
}

impl SearchReport {
    pub fn size(&self) -> usize {
        self.orientation.len()
    }

    pub fn hits(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}

/// Outcome of a single rule probe with the number of candidates examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe<T> {
    pub found: Option<T>,
    pub examined: usize,
}

/// Complete search for an improving set of at most `max_size` sets.
pub fn find_improving_set_rule1(
    sp: &SetPackingInstance,
    f0: &Subfamily,
    max_size: usize,
) -> Option<Subfamily> {
    probe_rule1(sp, f0, max_size).found
}

/// Rule 1 with a candidate count.
///
/// If `X` is improving then any `|Y| + 1` of its sets, with
/// `Y = N(X) ∩ F0`, form an improving set as well. So it suffices to try
/// every `Y ⊆ F0` with `|Y| < max_size`, by size then lexicographically,
/// and look for `|Y| + 1` disjoint sets among those blocked by nothing
/// outside `Y`. The first hit in that order is returned.
pub fn probe_rule1(sp: &SetPackingInstance, f0: &Subfamily, max_size: usize) -> Probe<Subfamily> {
    let pool: Vec<SetId> = f0.iter().copied().collect();
    let position: HashMap<SetId, usize> = pool.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // group outside sets by the (sorted) positions of the F0 members they hit
    let mut by_blockers: HashMap<Vec<usize>, Vec<SetId>> = HashMap::new();
    for s in sp.set_ids().filter(|s| !f0.contains(s)) {
        let blockers: Vec<usize> = blocking_sets(sp, f0, &Subfamily::from([s]))
            .iter()
            .map(|b| position[b])
            .sorted()
            .collect();
        if blockers.len() < max_size {
            by_blockers.entry(blockers).or_default().push(s);
        }
    }

    let mut examined = 0;
    for k in 0..max_size.min(pool.len() + 1) {
        for y in (0..pool.len()).combinations(k) {
            examined += 1;
            let mut candidates = Vec::new();
            let mut covered = vec![false; k];
            for mask in 0u32..(1 << k) {
                let key: Vec<usize> = (0..k)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| y[i])
                    .collect();
                if let Some(sets) = by_blockers.get(&key) {
                    candidates.extend_from_slice(sets);
                    for i in (0..k).filter(|&i| mask >> i & 1 == 1) {
                        covered[i] = true;
                    }
                }
            }
            // a member of Y that blocks nothing means a smaller Y was tried
            if covered.iter().any(|c| !c) || candidates.len() < k + 1 {
                continue;
            }
            candidates.sort_unstable();
            if let Some(x) = disjoint_selection(sp, &candidates, k + 1) {
                debug_assert!(is_improving_set(sp, f0, &x));
                return Probe {
                    found: Some(x),
                    examined,
                };
            }
        }
    }
    Probe {
        found: None,
        examined,
    }
}

/// Lexicographically first choice of `want` pairwise disjoint sets.
fn disjoint_selection(
    sp: &SetPackingInstance,
    candidates: &[SetId],
    want: usize,
) -> Option<Subfamily> {
    fn go(
        sp: &SetPackingInstance,
        candidates: &[SetId],
        start: usize,
        want: usize,
        used: &mut BTreeSet<usize>,
        chosen: &mut Vec<SetId>,
    ) -> bool {
        if chosen.len() == want {
            return true;
        }
        for i in start..candidates.len() {
            if candidates.len() - i < want - chosen.len() {
                break;
            }
            let elems = sp.set(candidates[i]).elements;
            if elems.iter().any(|x| used.contains(x)) {
                continue;
            }
            used.extend(elems);
            chosen.push(candidates[i]);
            if go(sp, candidates, i + 1, want, used, chosen) {
                return true;
            }
            chosen.pop();
            for x in elems {
                used.remove(&x);
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(want);
    go(sp, candidates, 0, want, &mut BTreeSet::new(), &mut chosen)
        .then(|| chosen.into_iter().collect())
}

/// Replaces `F0` by `(F0 \ N(X)) ∪ X`.
pub fn apply_improving_set(
    sp: &SetPackingInstance,
    f0: &Subfamily,
    x: &Subfamily,
) -> Result<Subfamily> {
    if !is_improving_set(sp, f0, x) {
        return Err(Error::NotImproving);
    }
    let blocked = blocking_sets(sp, f0, x);
    Ok(f0.difference(&blocked).chain(x.iter()).copied().collect())
}

/// Complete search for a feasible `F'` with `|F'| > |F|` and
/// `|F̄' Δ F̄| ≤ radius`, in EdgeId order.
pub fn find_improvement_rule2(
    inst: &Instance,
    f: &PartialOrientation,
    radius: usize,
) -> Result<Option<PartialOrientation>> {
    let order: Vec<EdgeId> = inst.edge_ids().collect();
    Ok(probe_rule2(inst, f, radius, &order)?.found)
}

/// Rule 2 with an explicit edge enumeration order and a candidate count.
///
/// Only removals `D ⊆ F̄` paired with additions `A` of size exactly
/// `|D| + 1` are tried: any larger feasible `A` has a feasible subset of
/// that size with a smaller symmetric difference. Candidates go by `|D|`,
/// then `D`, then `A`, each lexicographic in `order`.
pub fn probe_rule2(
    inst: &Instance,
    f: &PartialOrientation,
    radius: usize,
    order: &[EdgeId],
) -> Result<Probe<PartialOrientation>> {
    if !is_feasible(inst, f)? {
        return Err(Error::InfeasibleOrientation);
    }
    let current: Vec<EdgeId> = order
        .iter()
        .copied()
        .filter(|&e| f.contains_edge(e))
        .collect();
    let outside: Vec<EdgeId> = order
        .iter()
        .copied()
        .filter(|&e| !f.contains_edge(e) && orientable_alone(inst, e))
        .collect();

    let mut examined = 0;
    let mut removals = 0;
    while 2 * removals < radius && removals < current.len() + 1 && removals < outside.len() {
        for dropped in current.iter().copied().combinations(removals) {
            let kept: Vec<EdgeId> = current
                .iter()
                .copied()
                .filter(|e| !dropped.contains(e))
                .collect();
            for added in outside.iter().copied().combinations(removals + 1) {
                examined += 1;
                let candidate = kept.iter().chain(&added).copied();
                if let Some(po) = total_orientation(inst, candidate)? {
                    return Ok(Probe {
                        found: Some(po),
                        examined,
                    });
                }
            }
        }
        removals += 1;
    }
    Ok(Probe {
        found: None,
        examined,
    })
}

fn orientable_alone(inst: &Instance, e: EdgeId) -> bool {
    let (u, v) = inst.endpoints(e);
    (inst.dplus(u) > 0 && inst.dminus(v) > 0) || (inst.dplus(v) > 0 && inst.dminus(u) > 0)
}

/// Runs both rules from the empty orientation until a local optimum or the
/// iteration cap.
pub fn local_search(inst: &Instance, params: &SearchParams) -> Result<SearchReport> {
    if params.rule1_max_size == 0 || params.rule2_radius == 0 {
        return Err(Error::Precondition("rule radii must be at least 1".into()));
    }
    if params.iteration_cap == Some(0) {
        return Err(Error::Precondition(
            "iteration cap must be at least 1".into(),
        ));
    }
    let sp = build_setpacking(inst);
    let mut order: Vec<EdgeId> = inst.edge_ids().collect();
    if let Some(seed) = params.seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut f = PartialOrientation::new();
    let mut f0 = Subfamily::new();
    let mut steps = Vec::new();
    loop {
        if params.iteration_cap.is_some_and(|cap| steps.len() >= cap) {
            return Ok(SearchReport {
                orientation: f,
                steps,
                terminated: Termination::IterationCap,
                final_examined: 0,
            });
        }
        let rule2_first = match params.rule_order {
            RuleOrder::Rule1First => false,
            RuleOrder::Rule2First => true,
            RuleOrder::Alternate => steps.len() % 2 == 0,
        };
        let rules = if rule2_first {
            [Rule::Rule2, Rule::Rule1]
        } else {
            [Rule::Rule1, Rule::Rule2]
        };

        let before = f.len();
        let mut examined = 0;
        let mut applied = None;
        for rule in rules {
            match rule {
                Rule::Rule1 => {
                    let probe = probe_rule1(&sp, &f0, params.rule1_max_size);
                    examined += probe.examined;
                    if let Some(x) = probe.found {
                        f0 = apply_improving_set(&sp, &f0, &x)?;
                        f = family_to_orientation(&sp, &f0)?;
                        applied = Some(rule);
                        break;
                    }
                }
                Rule::Rule2 => {
                    let probe = probe_rule2(inst, &f, params.rule2_radius, &order)?;
                    examined += probe.examined;
                    if let Some(next) = probe.found {
                        f = next;
                        f0 = orientation_to_family(inst, &sp, &f)?;
                        applied = Some(rule);
                        break;
                    }
                }
            }
        }
        match applied {
            Some(rule) => {
                if f.len() <= before {
                    return Err(Error::Internal(format!(
                        "{rule:?} did not grow the orientation ({before} -> {})",
                        f.len()
                    )));
                }
                steps.push(Step {
                    rule,
                    size_before: before,
                    size_after: f.len(),
                    examined,
                });
            }
            None => {
                return Ok(SearchReport {
                    orientation: f,
                    steps,
                    terminated: Termination::LocalOptimum,
                    final_examined: examined,
                })
            }
        }
    }
}
