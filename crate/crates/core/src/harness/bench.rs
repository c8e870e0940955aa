//! Randomized local-search runs against the exact optimum.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::generate::{generate_with, rng_for, ConstraintModel, GraphModel};
use crate::analysis::{exact_opt, Ratio, DEFAULT_EDGE_LIMIT};
use crate::error::Result;
use crate::search::{local_search, Rule, RuleOrder, SearchParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    pub n: usize,
    pub p: f64,
    pub max_d: u32,
    pub trials: usize,
    pub seed: u64,
    pub r1: usize,
    pub r2: usize,
    pub order: RuleOrder,
    /// OPT is computed only for instances with at most this many edges.
    pub oracle_limit: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n: 8,
            p: 0.4,
            max_d: 2,
            trials: 20,
            seed: 0,
            r1: 4,
            r2: 4,
            order: RuleOrder::Rule2First,
            oracle_limit: DEFAULT_EDGE_LIMIT,
        }
    }
}

/// One trial. `opt` and the ratio are `None` above the oracle limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub opt: Option<usize>,
    pub ratio_num: Option<u64>,
    pub ratio_den: Option<u64>,
    pub iterations: usize,
    pub rule1_hits: usize,
    pub rule2_hits: usize,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<Ratio> {
        Some(Ratio::new(self.opt? as u64, self.f as u64))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchResult> {
    let constraints = ConstraintModel::General {
        max_d: config.max_d,
    };
    let mut rows = Vec::with_capacity(config.trials);
    for trial in 0..config.trials {
        let mut rng = rng_for(config.seed, trial as u64);
        let inst = generate_with(
            &mut rng,
            GraphModel::ErdosRenyi {
                n: config.n,
                p: config.p,
            },
            constraints,
            false,
        )?;
        let params = SearchParams {
            rule1_max_size: config.r1,
            rule2_radius: config.r2,
            rule_order: config.order,
            seed: Some(rng.gen()),
            iteration_cap: None,
        };
        let report = local_search(&inst, &params)?;
        let opt = if inst.num_edges() <= config.oracle_limit {
            Some(exact_opt(&inst, config.oracle_limit)?.len())
        } else {
            None
        };
        let parts = opt.map(|o| Ratio::new(o as u64, report.size() as u64).parts());
        rows.push(BenchRow {
            trial,
            n: inst.num_vertices(),
            m: inst.num_edges(),
            f: report.size(),
            opt,
            ratio_num: parts.map(|p| p.0),
            ratio_den: parts.map(|p| p.1),
            iterations: report.steps.len(),
            rule1_hits: report.hits(Rule::Rule1),
            rule2_hits: report.hits(Rule::Rule2),
        });
    }
    Ok(BenchResult {
        config: *config,
        rows,
    })
}

impl BenchResult {
    /// Largest measured ratio and the trial it came from.
    pub fn worst(&self) -> Option<(Ratio, usize)> {
        self.rows
            .iter()
            .filter_map(|r| Some((r.ratio()?, r.trial)))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
    }

    pub fn mean(&self) -> Option<f64> {
        let ratios: Vec<f64> = self
            .rows
            .iter()
            .filter_map(|r| Some(r.ratio()?.to_f64()))
            .collect();
        (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64)
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        writeln!(
            s,
            "# bench n={} p={} max_d={} trials={} seed={} r1={} r2={}",
            c.n, c.p, c.max_d, c.trials, c.seed, c.r1, c.r2
        )
        .unwrap();
        writeln!(
            s,
            "{:>5} {:>4} {:>4} {:>4} {:>5} {:>7} {:>5} {:>4} {:>4}",
            "trial", "n", "m", "f", "opt", "ratio", "iters", "r1", "r2"
        )
        .unwrap();
        for r in &self.rows {
            let opt = r.opt.map_or(String::new(), |o| o.to_string());
            let ratio = r.ratio().map_or(String::new(), |q| q.to_string());
            writeln!(
                s,
                "{:>5} {:>4} {:>4} {:>4} {:>5} {:>7} {:>5} {:>4} {:>4}",
                r.trial, r.n, r.m, r.f, opt, ratio, r.iterations, r.rule1_hits, r.rule2_hits
            )
            .unwrap();
        }
        let measured = self.rows.iter().filter(|r| r.opt.is_some()).count();
        match (self.worst(), self.mean()) {
            (Some((w, t)), Some(mean)) => {
                writeln!(
                    s,
                    "worst {w} (trial {t}), mean {mean:.4}, {measured} of {} trials measured",
                    self.rows.len()
                )
                .unwrap();
            }
            _ => writeln!(s, "no trial within the oracle limit").unwrap(),
        }
        s
    }

    pub fn to_jsonl(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect()
    }
}
