//! Command-line front end. Reads a graph, runs one algorithm, prints a JSON
//! (or `key: value` text) document with 1-based vertex labels.
//!
//! Exit codes: 0 success, 1 internal failure, 2 bad input or flags,
//! 3 infeasible instance, 4 oracle mismatch.

use std::path::PathBuf;

use algraph::distances::{self, DiameterProbe, DistanceMatrix, Extent};
use algraph::engine::EngineError;
use algraph::matching::{mwpm, second_smallest_pm_weight};
use algraph::seed::derive_seed;
use algraph::shortest_cycle::{shortest_cycle, shortest_cycle_weight, CycleWeight, ShortCycleIndex};
use algraph::{AlgError, Graph, Params, PrimeField};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

mod oracle_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "algraph", version, about = "Weighted graph problems via polynomial matrices over Z_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Graph file (JSON or edge list); `-` reads stdin.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Prime modulus, default 2^61 - 1.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Independent runs with derived seeds; the majority answer is printed.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeats: u32,
    /// Compare against a brute-force oracle (small inputs only).
    #[arg(long)]
    pub oracle_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum-weight cycle with a certificate.
    ShortestCycle(Common),
    /// Whether some cycle has negative weight.
    NegativeCycle(Common),
    Diameter(Common),
    Radius(Common),
    Eccentricities(Common),
    /// All-pairs distance matrix.
    Distances(Common),
    /// Minimum-weight perfect matching.
    Mwpm(Common),
    /// Second smallest perfect matching weight.
    SecondMatching(Common),
    /// Vertices on some cycle of weight at most T.
    CycleVertices {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t: i64,
    },
    /// Whether the diameter is at most C.
    CheckDiameter {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        c: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    ShortestCycle,
    NegativeCycle,
    Diameter,
    Radius,
    Eccentricities,
    Distances,
    Mwpm,
    SecondMatching,
    CycleVertices(i64),
    CheckDiameter(i64),
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::ShortestCycle => "shortest-cycle",
            Task::NegativeCycle => "negative-cycle",
            Task::Diameter => "diameter",
            Task::Radius => "radius",
            Task::Eccentricities => "eccentricities",
            Task::Distances => "distances",
            Task::Mwpm => "mwpm",
            Task::SecondMatching => "second-matching",
            Task::CycleVertices(_) => "cycle-vertices",
            Task::CheckDiameter(_) => "check-diameter",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub task: Task,
    pub input: PathBuf,
    pub seed: u64,
    pub prime: Option<u64>,
    pub repeats: u32,
    pub oracle_check: bool,
    pub format: Format,
}

impl From<Command> for RunConfig {
    fn from(c: Command) -> Self {
        let (task, common) = match c {
            Command::ShortestCycle(x) => (Task::ShortestCycle, x),
            Command::NegativeCycle(x) => (Task::NegativeCycle, x),
            Command::Diameter(x) => (Task::Diameter, x),
            Command::Radius(x) => (Task::Radius, x),
            Command::Eccentricities(x) => (Task::Eccentricities, x),
            Command::Distances(x) => (Task::Distances, x),
            Command::Mwpm(x) => (Task::Mwpm, x),
            Command::SecondMatching(x) => (Task::SecondMatching, x),
            Command::CycleVertices { common, t } => (Task::CycleVertices(t), common),
            Command::CheckDiameter { common, c } => (Task::CheckDiameter(c), common),
        };
        RunConfig {
            task,
            input: common.input,
            seed: common.seed,
            prime: common.prime,
            repeats: common.repeats,
            oracle_check: common.oracle_check,
            format: common.format,
        }
    }
}

/// What a run prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: String) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

/// Answer fields plus the run's error bound.
type Answer = (Map<String, Value>, f64);

fn one_based(vs: &[usize]) -> Value {
    json!(vs.iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn extent(x: Extent) -> Value {
    x.finite().map_or(Value::Null, Value::from)
}

fn exit_code(e: &AlgError) -> i32 {
    match e {
        AlgError::NegativeCycle | AlgError::NoPerfectMatching => EXIT_INFEASIBLE,
        AlgError::Graph(_) | AlgError::Engine(EngineError::InsufficientField { .. }) => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn distance_answer(key: &str, d: &DistanceMatrix, pick: impl Fn(&DistanceMatrix) -> Value) -> Answer {
    let mut m = Map::new();
    m.insert(key.into(), pick(d));
    (m, d.error_bound)
}

/// Runs `task` once with fixed parameters.
pub fn compute(task: Task, g: &Graph, params: &Params) -> Result<Answer, AlgError> {
    let mut m = Map::new();
    let bound = match task {
        Task::ShortestCycle => {
            let r = shortest_cycle(g, params)?;
            match r.weight {
                CycleWeight::NegativeCycle => return Err(AlgError::NegativeCycle),
                CycleWeight::NoCycle => {
                    m.insert("weight".into(), Value::Null);
                    m.insert("cycle".into(), Value::Null);
                }
                CycleWeight::Finite(w) => {
                    m.insert("weight".into(), w.into());
                    m.insert("cycle".into(), r.cycle.as_deref().map_or(Value::Null, one_based));
                }
            }
            r.error_bound
        }
        Task::NegativeCycle => {
            let r = shortest_cycle_weight(g, params)?;
            m.insert("negative_cycle".into(), (r.weight == CycleWeight::NegativeCycle).into());
            r.error_bound
        }
        Task::Diameter | Task::Radius | Task::Eccentricities | Task::Distances => {
            let d = distances::distances(g, params)?;
            let (a, b) = match task {
                Task::Diameter => distance_answer("diameter", &d, |d| extent(d.diameter())),
                Task::Radius => distance_answer("radius", &d, |d| extent(d.radius())),
                Task::Eccentricities => distance_answer("eccentricities", &d, |d| {
                    Value::Array(d.eccentricities().into_iter().map(extent).collect())
                }),
                _ => distance_answer("distances", &d, |d| json!(d.dist)),
            };
            m = a;
            b
        }
        Task::Mwpm => {
            let r = mwpm(g, params)?;
            let edges: Vec<[usize; 2]> = r.matching.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
            m.insert("weight".into(), r.matching.weight.into());
            m.insert("edges".into(), json!(edges));
            m.insert("reseeded".into(), r.reseeded.into());
            r.error_bound
        }
        Task::SecondMatching => {
            let s = second_smallest_pm_weight(g, params)?;
            m.insert("second_smallest".into(), s.map_or(Value::Null, Value::from));
            params.error_bound(g.edges().len() + 2, g.n())
        }
        Task::CycleVertices(t) => {
            let idx = ShortCycleIndex::new(g, params)?;
            m.insert("t".into(), t.into());
            m.insert("vertices".into(), one_based(&idx.vertices(t)));
            idx.error_bound(params)
        }
        Task::CheckDiameter(c) => {
            let probe = DiameterProbe::new(g, params)?;
            m.insert("c".into(), c.into());
            m.insert("diameter_at_most".into(), probe.at_most(c).into());
            probe.error_bound(params)
        }
    };
    Ok((m, bound))
}

fn render(doc: &Map<String, Value>, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", Value::Object(doc.clone())),
        Format::Text => doc.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let text = match read_input(&cfg.input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{}: {e}", cfg.input.display())),
    };
    let g = match Graph::parse(&text) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, e.to_string()),
    };
    let field = match cfg.prime.map(PrimeField::new).transpose() {
        Ok(f) => f.unwrap_or_else(PrimeField::mersenne61),
        Err(e) => return Outcome::fail(EXIT_INPUT, e.to_string()),
    };
    let base = Params::new(cfg.seed).with_field(field);

    // each repeat is an independent run; the most frequent answer wins and
    // ties go to the earliest run
    let runs: Vec<Result<Answer, AlgError>> = (0..cfg.repeats)
        .map(|k| {
            let seed = if k == 0 { cfg.seed } else { derive_seed(cfg.seed, &format!("repeat-{k}")) };
            compute(cfg.task, &g, &Params { seed, ..base })
        })
        .collect();
    let keys: Vec<String> = runs
        .iter()
        .map(|r| match r {
            Ok((a, _)) => Value::Object(a.clone()).to_string(),
            Err(e) => format!("error: {e}"),
        })
        .collect();
    let votes = |k: &String| keys.iter().filter(|x| *x == k).count();
    let winner = (0..keys.len()).max_by(|&a, &b| votes(&keys[a]).cmp(&votes(&keys[b])).then(b.cmp(&a))).unwrap_or(0);
    let agreeing = votes(&keys[winner]);

    let mut doc = Map::new();
    doc.insert("command".into(), cfg.task.name().into());
    doc.insert("seed".into(), cfg.seed.into());
    doc.insert("prime".into(), field.modulus().into());
    if cfg.repeats > 1 {
        doc.insert("repeats".into(), cfg.repeats.into());
        doc.insert("agreeing_runs".into(), agreeing.into());
        doc.insert("disagreement".into(), (agreeing < cfg.repeats as usize).into());
    }
    let mut stderr = String::new();
    let mut code = EXIT_OK;
    match &runs[winner] {
        Ok((answer, bound)) => {
            doc.extend(answer.clone());
            doc.insert("error_bound".into(), json!(bound * cfg.repeats as f64));
        }
        Err(e) => {
            code = exit_code(e);
            doc.insert("error".into(), e.to_string().into());
            if matches!(e, AlgError::NegativeCycle) {
                doc.insert("negative_cycle".into(), true.into());
            }
            stderr.push_str(&format!("error: {e}\n"));
        }
    }
    if cfg.oracle_check {
        match oracle_check::check(cfg.task, &g, &runs[winner]) {
            oracle_check::Verdict::Pass => {
                doc.insert("oracle_check".into(), "pass".into());
            }
            oracle_check::Verdict::Skipped(why) => {
                doc.insert("oracle_check".into(), format!("skipped: {why}").into());
            }
            oracle_check::Verdict::Mismatch(why) => {
                doc.insert("oracle_check".into(), format!("mismatch: {why}").into());
                stderr.push_str(&format!("oracle mismatch: {why}\n"));
                code = EXIT_ORACLE;
            }
        }
    }
    Outcome { code, stdout: render(&doc, cfg.format), stderr }
}
