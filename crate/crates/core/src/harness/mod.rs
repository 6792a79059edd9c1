//! Instance generators, certificates, and the experiment runner behind the CLI.

mod certificate;
mod experiment;
mod generate;

pub use certificate::{check_certificate, Certificate, CheckOutcome, CheckParams};
pub use experiment::{
    bench, rep_seeds, run_experiment, run_once, Algorithm, BenchReport, ExperimentConfig, Percentiles, Report,
    RunRecord, RunVerdict, Summary, SCHEMA_VERSION,
};
pub use generate::{generate, Generated, GeneratorKind};
