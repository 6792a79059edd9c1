use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::{Map, Value};
use splitsim::harness::{
    bench, check_certificate, generate, Algorithm, Certificate, CheckParams, ExperimentConfig, Generated, GeneratorKind,
};

#[derive(Parser)]
#[command(name = "splitsim", version, about = "Distributed splitting algorithms: generate, run, verify, bench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Generate {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment and write its report.
    Run(RunArgs),
    /// Check a certificate against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        /// Palette size for a (C, lambda) multicolor check.
        #[arg(long, requires = "lambda")]
        colors: Option<usize>,
        #[arg(long, requires = "colors")]
        lambda: Option<f64>,
        /// Check an orientation for this discrepancy instead of for sinks.
        #[arg(long)]
        max_discrepancy: Option<usize>,
    },
    /// Like `run`, but times every repetition sequentially.
    Bench(RunArgs),
}

#[derive(Args)]
struct GeneratorArgs {
    /// Generator kind, e.g. random-bipartite, bipartite-tree, min-degree-graph.
    #[arg(long)]
    kind: Option<String>,
    /// Generator parameter as key=value; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config as JSON; overrides the other experiment flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algorithm, e.g. derandomized, speedup, randomized, high-girth, mis.
    #[arg(long)]
    algo: Option<String>,
    /// Algorithm parameter as key=value; repeatable.
    #[arg(long = "algo-param", value_name = "KEY=VALUE")]
    algo_params: Vec<String>,
    #[command(flatten)]
    generator: GeneratorArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Leave certificates out of the report.
    #[arg(long)]
    no_certificates: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// `{"<tag>": name, key: value, ...}`; values are parsed as JSON when they parse.
fn tagged(tag: &str, name: &str, params: &[String]) -> Result<Value> {
    let mut map = Map::new();
    map.insert(tag.into(), Value::String(name.into()));
    for p in params {
        let (k, v) = p.split_once('=').with_context(|| format!("parameter `{p}` is not KEY=VALUE"))?;
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.into()));
        map.insert(k.into(), value);
    }
    Ok(Value::Object(map))
}

fn generator_kind(args: &GeneratorArgs) -> Result<GeneratorKind> {
    let kind = args.kind.as_deref().context("--kind is required")?;
    serde_json::from_value(tagged("kind", kind, &args.params)?).context("bad generator parameters")
}

fn experiment(args: &RunArgs) -> Result<ExperimentConfig> {
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return serde_json::from_str(&text).context("bad experiment config");
    }
    let algo = args.algo.as_deref().context("--algo or --config is required")?;
    let algorithm: Algorithm =
        serde_json::from_value(tagged("algo", algo, &args.algo_params)?).context("bad algorithm parameters")?;
    Ok(ExperimentConfig {
        algorithm,
        generator: generator_kind(&args.generator)?,
        seed: args.seed,
        reps: args.reps,
        certificates: !args.no_certificates,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { generator, seed, out } => {
            let inst = generate(&generator_kind(&generator)?, seed)?;
            info!("generated {} nodes, {} edges", inst.n(), inst.edge_count());
            emit(out.as_deref(), &inst.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Run(args) => {
            let config = experiment(&args)?;
            let report = splitsim::harness::run_experiment(&config);
            let text = match args.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv()?,
            };
            emit(args.out.as_deref(), &text)?;
            let s = &report.summary;
            eprintln!("{} runs: {} valid, {} invalid, {} errors", s.runs, s.valid, s.invalid, s.errors);
            for r in report.runs.iter().filter(|r| r.error.is_some()) {
                eprintln!("rep {}: {}", r.rep, r.error.as_deref().unwrap_or_default());
            }
            Ok(if s.invalid > 0 {
                ExitCode::from(2)
            } else if s.errors > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Bench(args) => {
            if matches!(args.format, Format::Csv) {
                bail!("bench reports are JSON only");
            }
            let report = bench(&experiment(&args)?);
            emit(args.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            let w = &report.wall;
            eprintln!("wall ms: p50 {:.2}, p90 {:.2}, max {:.2}", w.p50, w.p90, w.max);
            Ok(if report.summary.invalid > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Verify { instance, certificate, colors, lambda, max_discrepancy } => {
            let inst = Generated::from_json(&fs::read_to_string(&instance)?)?;
            let cert = Certificate::from_json(&fs::read_to_string(&certificate)?)?;
            let params = CheckParams { multicolor: colors.zip(lambda), max_discrepancy };
            let outcome = check_certificate(&inst, &cert, &params)?;
            println!("{}", serde_json::to_string(&outcome)?);
            Ok(if outcome.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SPLIT_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
