//! The `udpo` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::bench::{run_bench, BenchConfig};
use super::format::{parse_instance, parse_orientation, write_instance, write_orientation};
use super::generate::{generate, ConstraintModel, GeneratorSpec, GraphModel};
use super::verify::{dump, run_all, Scale};
use crate::analysis::{exact_opt, DEFAULT_EDGE_LIMIT};
use crate::feasibility::total_orientation;
use crate::model::{EdgeId, Instance, PartialOrientation};
use crate::search::{local_search, Rule, RuleOrder, SearchParams, Step, Termination};
use crate::simplify::simplify_instance;

#[derive(Debug, Parser)]
#[command(
    name = "udpo",
    version,
    about = "Degree-constrained partial orientation by local search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Rule1first,
    Rule2first,
    Alternate,
}

impl From<Order> for RuleOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Rule1first => RuleOrder::Rule1First,
            Order::Rule2first => RuleOrder::Rule2First,
            Order::Alternate => RuleOrder::Alternate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    /// Each pair is an edge with probability --p.
    Er,
    /// --m uniformly random edges, parallel edges allowed.
    Multi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteSize {
    Small,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run local search and print the orientation found.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        r1: usize,
        #[arg(long, default_value_t = 4)]
        r2: usize,
        #[arg(long, value_enum, default_value_t = Order::Rule2first)]
        order: Order,
        /// Shuffle the rule-2 edge order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Stop after this many improvements.
        #[arg(long)]
        cap: Option<usize>,
        /// Write one JSON object per improvement step, then a summary.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute an optimal orientation by exhaustive search.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: usize,
    },
    /// Decide whether a set of edges can be oriented all at once.
    Feasible {
        file: PathBuf,
        /// Comma-separated 1-based edge ids, or `all`.
        #[arg(long)]
        edges: String,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_enum, default_value_t = Model::Er)]
        model: Model,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        m: usize,
        /// Largest cap; 1 gives a simple instance.
        #[arg(long, default_value_t = 1)]
        max_d: u32,
        /// Reduce to a proper instance.
        #[arg(long)]
        proper: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Split vertices until all caps are 0 or 1, keeping two orientations
    /// feasible.
    Simplify {
        file: PathBuf,
        #[arg(long)]
        orient_a: PathBuf,
        #[arg(long)]
        orient_b: PathBuf,
    },
    /// Run the property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteSize::Small)]
        suite: SuiteSize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare local search with the optimum on random instances.
    Bench {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        max_d: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        r1: usize,
        #[arg(long, default_value_t = 4)]
        r2: usize,
        #[arg(long, value_enum, default_value_t = Order::Rule2first)]
        order: Order,
        /// Largest edge count for which the optimum is computed.
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: usize,
        /// Also write the rows as JSON lines to this file.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_orientation(path: &Path, inst: &Instance) -> Result<PartialOrientation, Failure> {
    parse_orientation(&read(path)?, inst).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn lib<T>(r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| usage(e.to_string()))
}

#[derive(Serialize)]
struct StepRow<'a> {
    iteration: usize,
    #[serde(flatten)]
    step: &'a Step,
}

#[derive(Serialize)]
struct SummaryRow {
    size: usize,
    iterations: usize,
    rule1_hits: usize,
    rule2_hits: usize,
    terminated: Termination,
    final_examined: usize,
}

fn parse_edge_list(spec: &str, inst: &Instance) -> Result<Vec<EdgeId>, Failure> {
    if spec.trim() == "all" {
        return Ok(inst.edge_ids().collect());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let id: usize = s
                .trim()
                .parse()
                .map_err(|_| usage(format!("invalid edge id '{s}'")))?;
            if id == 0 || id > inst.num_edges() {
                return Err(usage(format!(
                    "edge id {id} out of range 1..{}",
                    inst.num_edges()
                )));
            }
            Ok(EdgeId(id - 1))
        })
        .collect()
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| usage(e.to_string());
    match cli.command {
        Command::Solve {
            file,
            r1,
            r2,
            order,
            seed,
            cap,
            report,
        } => {
            let inst = load_instance(&file)?;
            let params = SearchParams {
                rule1_max_size: r1,
                rule2_radius: r2,
                rule_order: order.into(),
                seed,
                iteration_cap: cap,
            };
            let rep = lib(local_search(&inst, &params))?;
            out.write_all(write_orientation(&rep.orientation).as_bytes())
                .map_err(io)?;
            writeln!(
                err,
                "size {} after {} improvements (rule 1: {}, rule 2: {}), {}",
                rep.size(),
                rep.steps.len(),
                rep.hits(Rule::Rule1),
                rep.hits(Rule::Rule2),
                match rep.terminated {
                    Termination::LocalOptimum => "local optimum",
                    Termination::IterationCap => "iteration cap reached",
                }
            )
            .map_err(io)?;
            if let Some(path) = report {
                let mut text = String::new();
                for (iteration, step) in rep.steps.iter().enumerate() {
                    text +=
                        &serde_json::to_string(&StepRow { iteration, step }).expect("serializable");
                    text.push('\n');
                }
                let summary = SummaryRow {
                    size: rep.size(),
                    iterations: rep.steps.len(),
                    rule1_hits: rep.hits(Rule::Rule1),
                    rule2_hits: rep.hits(Rule::Rule2),
                    terminated: rep.terminated,
                    final_examined: rep.final_examined,
                };
                text += &serde_json::to_string(&summary).expect("serializable");
                text.push('\n');
                write_file(&path, &text)?;
            }
        }
        Command::Oracle { file, limit } => {
            let inst = load_instance(&file)?;
            let opt = lib(exact_opt(&inst, limit))?;
            write!(out, "# size {}\n{}", opt.len(), write_orientation(&opt)).map_err(io)?;
        }
        Command::Feasible { file, edges } => {
            let inst = load_instance(&file)?;
            let subset = parse_edge_list(&edges, &inst)?;
            match lib(total_orientation(&inst, subset))? {
                Some(po) => out
                    .write_all(write_orientation(&po).as_bytes())
                    .map_err(io)?,
                None => writeln!(out, "INFEASIBLE").map_err(io)?,
            }
        }
        Command::Gen {
            model,
            n,
            p,
            m,
            max_d,
            proper,
            seed,
        } => {
            let graph = match model {
                Model::Er => GraphModel::ErdosRenyi { n, p },
                Model::Multi => GraphModel::RandomMulti { n, m },
            };
            let constraints = if max_d == 1 {
                ConstraintModel::Simple
            } else {
                ConstraintModel::General { max_d }
            };
            let inst = lib(generate(&GeneratorSpec {
                graph,
                constraints,
                seed,
                proper,
            }))?;
            out.write_all(write_instance(&inst).as_bytes())
                .map_err(io)?;
        }
        Command::Simplify {
            file,
            orient_a,
            orient_b,
        } => {
            let inst = load_instance(&file)?;
            let a = load_orientation(&orient_a, &inst)?;
            let b = load_orientation(&orient_b, &inst)?;
            let s = lib(simplify_instance(&inst, &a, &b))?;
            for line in s.trace.to_text().lines() {
                writeln!(out, "# {line}").map_err(io)?;
            }
            out.write_all(dump(&s.instance, &[("A", &s.a), ("B", &s.b)]).as_bytes())
                .map_err(io)?;
        }
        Command::Verify { suite, seed } => {
            let scale = match suite {
                SuiteSize::Small => Scale::Small,
                SuiteSize::Full => Scale::Full,
            };
            let outcomes = run_all(scale, seed);
            for o in &outcomes {
                writeln!(out, "{o}").map_err(io)?;
                if let Some(c) = &o.counterexample {
                    write!(out, "{c}").map_err(io)?;
                }
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            if failed > 0 {
                return Err(Failure {
                    code: 1,
                    message: format!("{failed} suites failed"),
                });
            }
        }
        Command::Bench {
            n,
            p,
            max_d,
            trials,
            seed,
            r1,
            r2,
            order,
            limit,
            jsonl,
        } => {
            let cfg = BenchConfig {
                n,
                p,
                max_d,
                trials,
                seed,
                r1,
                r2,
                order: order.into(),
                oracle_limit: limit,
            };
            let res = lib(run_bench(&cfg))?;
            out.write_all(res.to_text().as_bytes()).map_err(io)?;
            if let Some(path) = jsonl {
                write_file(&path, &res.to_jsonl())?;
            }
        }
    }
    Ok(())
}

/// Runs the command line given by `args` (including the program name) and
/// returns the exit code: 0 on success, 1 when verification fails, 2 on
/// usage or input errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
