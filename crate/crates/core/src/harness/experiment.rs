use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_certificate, generate, Certificate, CheckParams, Generated, GeneratorKind};
use crate::degree::{
    degree_rank_reduction_one_traced, degree_rank_reduction_two_traced, directed_degree_split_with, SplitMode,
};
use crate::engine::rng::substream;
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{graph_to_weaksplit_instance, log2n, BipartiteInstance, SimGraph};
use crate::multicolor::{multicolor_split_iterate, MulticolorParams};
use crate::reductions::{
    coloring_via_splitting, mis_via_splitting_traced, sinkless_instance, splitting_to_orientation,
    strong_split_bipartite,
};
use crate::weak::{
    derandomized_shatter, derandomized_weak_split_traced, high_girth_weak_split, random_weak_split,
    randomized_weak_split, shatter, trim_then_split, weak_split_delta_ge_6r, weak_split_speedup, GirthConfig,
    RandomizedConfig, TwoColoring,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Algorithms the harness can run, with their parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algo", rename_all = "kebab-case")]
pub enum Algorithm {
    Derandomized,
    TrimThenSplit,
    Speedup,
    RandomWeak,
    #[serde(rename = "delta-ge-6r")]
    DeltaGe6r {
        #[serde(default)]
        randomized: bool,
    },
    Randomized(RandomizedConfig),
    HighGirth {
        #[serde(default)]
        randomized: bool,
    },
    Shatter {
        #[serde(default)]
        derandomized: bool,
    },
    DegreeSplit {
        eps: f64,
    },
    ReduceOne {
        eps: f64,
        iterations: usize,
    },
    ReduceTwo {
        eps: f64,
        iterations: usize,
    },
    Multicolor {
        colors: usize,
        lambda: f64,
    },
    StrongSplit {
        eps: f64,
    },
    Sinkless,
    Coloring {
        eps: f64,
        #[serde(default)]
        depth: Option<usize>,
    },
    Mis {
        eps: f64,
    },
}

impl Algorithm {
    pub fn name(&self) -> String {
        let json = serde_json::to_value(self).expect("algorithms serialize");
        json["algo"].as_str().unwrap_or("unknown").to_string()
    }
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub generator: GeneratorKind,
    pub seed: u64,
    pub reps: usize,
    /// Embed certificates in the report.
    #[serde(default = "default_true")]
    pub certificates: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunVerdict {
    Valid,
    Invalid,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub rep: usize,
    pub instance_seed: u64,
    pub algo_seed: u64,
    pub nodes: usize,
    pub edges: usize,
    pub verdict: RunVerdict,
    pub violations: usize,
    pub error: Option<String>,
    pub ledger: RoundLedger,
    pub metrics: BTreeMap<String, f64>,
    pub traces: BTreeMap<String, Vec<f64>>,
    pub check: CheckParams,
    pub certificate: Option<Certificate>,
}

/// Nearest-rank percentiles.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Percentiles {
    pub count: usize,
    pub min: f64,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
    pub mean: f64,
}

impl Percentiles {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Percentiles::default();
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let at = |q: f64| v[((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
        Percentiles {
            count: v.len(),
            min: v[0],
            p50: at(0.5),
            p90: at(0.9),
            p99: at(0.99),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub runs: usize,
    pub valid: usize,
    pub invalid: usize,
    pub errors: usize,
    pub simulated_rounds: Percentiles,
    pub nominal_rounds: Percentiles,
    /// Percentiles of every metric over the runs that report it.
    pub metrics: BTreeMap<String, Percentiles>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub runs: Vec<RunRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One row per run; metric columns are the union of all metric names.
    pub fn to_csv(&self) -> Result<String> {
        let keys: BTreeSet<&String> = self.runs.iter().flat_map(|r| r.metrics.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = [
            "schema_version",
            "algorithm",
            "rep",
            "instance_seed",
            "algo_seed",
            "nodes",
            "edges",
            "verdict",
            "violations",
            "simulated_rounds",
            "nominal_rounds",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        header.extend(keys.iter().map(|k| k.to_string()));
        w.write_record(&header)?;
        let algo = self.config.algorithm.name();
        for r in &self.runs {
            let verdict = serde_json::to_value(r.verdict)?;
            let mut row = vec![
                SCHEMA_VERSION.to_string(),
                algo.clone(),
                r.rep.to_string(),
                r.instance_seed.to_string(),
                r.algo_seed.to_string(),
                r.nodes.to_string(),
                r.edges.to_string(),
                verdict.as_str().unwrap_or_default().to_string(),
                r.violations.to_string(),
                r.ledger.total_simulated().to_string(),
                r.ledger.total_nominal().to_string(),
            ];
            row.extend(keys.iter().map(|k| r.metrics.get(*k).map(|x| x.to_string()).unwrap_or_default()));
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Seeds of repetition `rep`: one for the generator, one for the algorithm.
pub fn rep_seeds(seed: u64, rep: usize) -> (u64, u64) {
    (substream(seed, 2 * rep as u64), substream(seed, 2 * rep as u64 + 1))
}

/// What an algorithm produced, before checking.
struct Outcome {
    certificate: Option<Certificate>,
    check: CheckParams,
    ledger: RoundLedger,
    metrics: BTreeMap<String, f64>,
    traces: BTreeMap<String, Vec<f64>>,
    /// Violations found by algorithm-specific checks.
    violations: usize,
}

impl Outcome {
    fn new(ledger: RoundLedger) -> Self {
        Outcome {
            certificate: None,
            check: CheckParams::default(),
            ledger,
            metrics: BTreeMap::new(),
            traces: BTreeMap::new(),
            violations: 0,
        }
    }

    fn metric(&mut self, name: &str, value: impl Into<f64>) {
        self.metrics.insert(name.to_string(), value.into());
    }
}

fn as_bipartite(inst: &Generated) -> Result<BipartiteInstance> {
    match inst {
        Generated::Bipartite(b) => Ok(b.clone()),
        Generated::Graph(g) => graph_to_weaksplit_instance(g),
    }
}

fn as_graph(inst: &Generated) -> Result<&SimGraph> {
    match inst {
        Generated::Graph(g) => Ok(g),
        Generated::Bipartite(_) => Err(Error::ParamViolation("this algorithm needs a plain graph".into())),
    }
}

fn two_coloring(ledger: RoundLedger, coloring: TwoColoring) -> Outcome {
    let mut out = Outcome::new(ledger);
    out.certificate = Some(Certificate::TwoColoring(coloring.values));
    out
}

fn shape_metrics(out: &mut Outcome, b: &BipartiteInstance) {
    out.metric("min_degree", b.min_left_degree() as f64);
    out.metric("max_degree", b.max_left_degree() as f64);
    out.metric("rank", b.rank() as f64);
}

fn trace(out: &mut Outcome, trace: &[(usize, usize)]) {
    out.traces.insert("delta".into(), trace.iter().map(|t| t.0 as f64).collect());
    out.traces.insert("rank".into(), trace.iter().map(|t| t.1 as f64).collect());
}

fn execute(algo: &Algorithm, inst: &Generated, seed: u64) -> Result<Outcome> {
    let mode = |randomized: bool| {
        if randomized {
            SplitMode::Randomized
        } else {
            SplitMode::Deterministic
        }
    };
    Ok(match algo {
        Algorithm::Derandomized => {
            let b = as_bipartite(inst)?;
            let run = derandomized_weak_split_traced(&b)?;
            let mut out = two_coloring(run.ledger, run.coloring);
            shape_metrics(&mut out, &b);
            out.metric("estimator_initial", run.trace.initial);
            out.metric("estimator_non_increasing", u8::from(run.trace.non_increasing));
            if !(run.trace.initial_below_one && run.trace.non_increasing) {
                out.violations += 1;
            }
            out
        }
        Algorithm::TrimThenSplit | Algorithm::Speedup => {
            let b = as_bipartite(inst)?;
            let (coloring, ledger) =
                if *algo == Algorithm::Speedup { weak_split_speedup(&b)? } else { trim_then_split(&b)? };
            let mut out = two_coloring(ledger, coloring);
            shape_metrics(&mut out, &b);
            out
        }
        Algorithm::RandomWeak => {
            let b = as_bipartite(inst)?;
            let mut ledger = RoundLedger::new();
            ledger.charge("random coloring", 0, 0.0, "0");
            let mut out = two_coloring(ledger, random_weak_split(&b, seed));
            shape_metrics(&mut out, &b);
            out
        }
        Algorithm::DeltaGe6r { randomized } => {
            let b = as_bipartite(inst)?;
            let run = weak_split_delta_ge_6r(&b, mode(*randomized), seed)?;
            let mut out = two_coloring(run.ledger, run.coloring);
            shape_metrics(&mut out, &b);
            out.metric("retries", run.retries);
            out
        }
        Algorithm::Randomized(config) => {
            let b = as_bipartite(inst)?;
            let run = randomized_weak_split(&b, seed, config)?;
            let mut out = two_coloring(run.ledger, run.coloring);
            shape_metrics(&mut out, &b);
            out.metric("retries", run.retries);
            out
        }
        Algorithm::HighGirth { randomized } => {
            let b = as_bipartite(inst)?;
            let run = high_girth_weak_split(&b, mode(*randomized), seed, &GirthConfig::default())?;
            let mut out = two_coloring(run.ledger, run.coloring);
            shape_metrics(&mut out, &b);
            out.metric("retries", run.retries);
            out
        }
        Algorithm::Shatter { derandomized } => {
            let b = as_bipartite(inst)?;
            let outcome = if *derandomized { derandomized_shatter(&b)? } else { shatter(&b, seed) };
            let comps = outcome.components(&b);
            let sizes: Vec<f64> = comps.iter().map(|c| c.n() as f64).collect();
            let mut out = Outcome::new(outcome.ledger.clone());
            shape_metrics(&mut out, &b);
            let residual = outcome.residual_min_degree(&b);
            let floor = b.min_left_degree().div_ceil(4);
            if residual.is_some_and(|d| d < floor) {
                out.violations += 1;
            }
            let log_n = log2n(b.n());
            out.metric("unsatisfied", outcome.unsatisfied_count() as f64);
            out.metric("unsatisfied_rate", outcome.unsatisfied_count() as f64 / b.left_count().max(1) as f64);
            out.metric("components", comps.len() as f64);
            out.metric("max_component", sizes.iter().copied().fold(0.0, f64::max));
            out.metric("component_budget", 64.0 * (b.rank() as f64).powi(4) * log_n.powi(6));
            if let Some(d) = residual {
                out.metric("residual_min_degree", d as f64);
            }
            out.traces.insert("component_sizes".into(), sizes);
            out
        }
        Algorithm::DegreeSplit { eps } => {
            let g = as_graph(inst)?;
            let (o, ledger) = directed_degree_split_with(g, *eps, SplitMode::Deterministic)?;
            let mut out = Outcome::new(ledger);
            out.certificate = Some(Certificate::Orientation(o.arcs));
            out.check.max_discrepancy = Some(1);
            out
        }
        Algorithm::ReduceOne { eps, iterations } | Algorithm::ReduceTwo { eps, iterations } => {
            let b = as_bipartite(inst)?;
            let run = if matches!(algo, Algorithm::ReduceOne { .. }) {
                degree_rank_reduction_one_traced(&b, *eps, *iterations, SplitMode::Deterministic)?
            } else {
                degree_rank_reduction_two_traced(&b, *eps, *iterations, SplitMode::Deterministic)?
            };
            let mut out = Outcome::new(run.ledger);
            shape_metrics(&mut out, &b);
            out.metric("final_min_degree", run.instance.min_left_degree() as f64);
            out.metric("final_rank", run.instance.rank() as f64);
            trace(&mut out, &run.trace);
            out
        }
        Algorithm::Multicolor { colors, lambda } => {
            let b = as_bipartite(inst)?;
            let params = MulticolorParams::new(*colors, *lambda);
            let run = multicolor_split_iterate(&b, &params, seed)?;
            let mut out = Outcome::new(run.ledger);
            shape_metrics(&mut out, &b);
            out.metric("palette", run.coloring.palette as f64);
            out.metric("lambda", run.lambda);
            out.metric("iterations", run.iterations as f64);
            out.traces.insert("virtual_nodes".into(), run.virtual_nodes.iter().map(|&x| x as f64).collect());
            out.check.multicolor = Some((run.coloring.palette, run.lambda));
            out.certificate = Some(Certificate::Multicoloring(run.coloring.colors));
            out
        }
        Algorithm::StrongSplit { eps } => {
            let b = as_bipartite(inst)?;
            let (coloring, ledger) = strong_split_bipartite(&b, *eps)?;
            let mut out = Outcome::new(ledger);
            shape_metrics(&mut out, &b);
            let verdict = crate::verify::check_uniform_split(&b, &coloring, *eps, None)?;
            out.violations += verdict.violations.len();
            out.certificate = Some(Certificate::TwoColoring(coloring.values));
            out
        }
        Algorithm::Sinkless => {
            let g = as_graph(inst)?;
            let b = sinkless_instance(g)?;
            let (coloring, ledger) = weak_split_speedup(&b).or_else(|_| {
                weak_split_delta_ge_6r(&b, SplitMode::Deterministic, seed).map(|r| (r.coloring, r.ledger))
            })?;
            let o = splitting_to_orientation(g, &b, &coloring)?;
            let mut out = Outcome::new(ledger);
            shape_metrics(&mut out, &b);
            out.certificate = Some(Certificate::Orientation(o.arcs));
            out
        }
        Algorithm::Coloring { eps, depth } => {
            let g = as_graph(inst)?;
            let run = coloring_via_splitting(g, *eps, *depth)?;
            let mut out = Outcome::new(run.ledger);
            out.metric("max_degree", g.max_degree() as f64);
            out.metric("palette", run.coloring.palette as f64);
            out.metric("depth", run.depth as f64);
            out.metric("leaf_max_degree", run.leaf_max_degree as f64);
            out.metric("measured_bound", run.measured_bound as f64);
            out.metric("formula_bound", run.formula_bound);
            out.traces.insert("level_max_degree".into(), run.level_max_degrees.iter().map(|&x| x as f64).collect());
            if run.coloring.palette > run.measured_bound {
                out.violations += 1;
            }
            out.certificate = Some(Certificate::Coloring(run.coloring.colors));
            out
        }
        Algorithm::Mis { eps } => {
            let g = as_graph(inst)?;
            let run = mis_via_splitting_traced(g, *eps)?;
            let mut out = Outcome::new(run.ledger);
            out.metric("max_degree", g.max_degree() as f64);
            out.metric("mis_size", run.set.len() as f64);
            out.metric("steps", run.stats.steps as f64);
            out.metric("heavy_iterations", run.stats.iterations.len() as f64);
            out.traces
                .insert("covered_fraction".into(), run.stats.iterations.iter().map(|i| i.covered_fraction()).collect());
            out.certificate = Some(Certificate::Mis(run.set.members));
            out
        }
    })
}

/// Generates, runs and checks one repetition.
pub fn run_once(config: &ExperimentConfig, rep: usize) -> RunRecord {
    let (instance_seed, algo_seed) = rep_seeds(config.seed, rep);
    let mut record = RunRecord {
        rep,
        instance_seed,
        algo_seed,
        nodes: 0,
        edges: 0,
        verdict: RunVerdict::Error,
        violations: 0,
        error: None,
        ledger: RoundLedger::new(),
        metrics: BTreeMap::new(),
        traces: BTreeMap::new(),
        check: CheckParams::default(),
        certificate: None,
    };
    let result = generate(&config.generator, instance_seed).and_then(|inst| {
        record.nodes = inst.n();
        record.edges = inst.edge_count();
        let out = execute(&config.algorithm, &inst, algo_seed)?;
        let checked = match &out.certificate {
            Some(cert) => check_certificate(&inst, cert, &out.check)?.violations,
            None => 0,
        };
        Ok((out, checked))
    });
    match result {
        Ok((out, checked)) => {
            record.violations = out.violations + checked;
            record.verdict = if record.violations == 0 { RunVerdict::Valid } else { RunVerdict::Invalid };
            record.ledger = out.ledger;
            record.metrics = out.metrics;
            record.traces = out.traces;
            record.check = out.check;
            record.certificate = if config.certificates { out.certificate } else { None };
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

fn summarize(runs: &[RunRecord]) -> Summary {
    let count = |v: RunVerdict| runs.iter().filter(|r| r.verdict == v).count();
    let done: Vec<&RunRecord> = runs.iter().filter(|r| r.verdict != RunVerdict::Error).collect();
    let simulated: Vec<f64> = done.iter().map(|r| r.ledger.total_simulated() as f64).collect();
    let nominal: Vec<f64> = done.iter().map(|r| r.ledger.total_nominal()).collect();
    let mut by_metric: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in &done {
        for (k, &v) in &r.metrics {
            by_metric.entry(k.clone()).or_default().push(v);
        }
    }
    Summary {
        runs: runs.len(),
        valid: count(RunVerdict::Valid),
        invalid: count(RunVerdict::Invalid),
        errors: count(RunVerdict::Error),
        simulated_rounds: Percentiles::of(&simulated),
        nominal_rounds: Percentiles::of(&nominal),
        metrics: by_metric.into_iter().map(|(k, v)| (k, Percentiles::of(&v))).collect(),
    }
}

/// Runs all repetitions in parallel. The report depends only on the config: wall time
/// is left out so that replays are byte-identical (see [`bench`]).
pub fn run_experiment(config: &ExperimentConfig) -> Report {
    let runs: Vec<RunRecord> = (0..config.reps).into_par_iter().map(|rep| run_once(config, rep)).collect();
    let summary = summarize(&runs);
    info!(
        "{}: {} runs, {} valid, {} invalid, {} errors",
        config.algorithm.name(),
        summary.runs,
        summary.valid,
        summary.invalid,
        summary.errors
    );
    Report { schema_version: SCHEMA_VERSION, config: config.clone(), runs, summary }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    /// Wall time of every repetition, generation included, in milliseconds.
    pub wall_ms: Vec<f64>,
    pub wall: Percentiles,
    pub summary: Summary,
}

/// Times each repetition sequentially.
pub fn bench(config: &ExperimentConfig) -> BenchReport {
    let mut wall_ms = Vec::with_capacity(config.reps);
    let mut runs = Vec::with_capacity(config.reps);
    for rep in 0..config.reps {
        let start = Instant::now();
        runs.push(run_once(config, rep));
        wall_ms.push(start.elapsed().as_secs_f64() * 1e3);
    }
    BenchReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        wall: Percentiles::of(&wall_ms),
        wall_ms,
        summary: summarize(&runs),
    }
}
