use log::debug;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    derandomized_shatter, residual_gap, shatter, unsatisfied_left, weak_split_delta_ge_6r, weak_split_speedup, Color,
    ShatterOutcome, SplitRun, TwoColoring,
};
use crate::degree::SplitMode;
use crate::engine::rng::{node_rng, substream};
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{log2n, split_heavy_left_nodes, BipartiteInstance, Component};

/// Zero-round random coloring: every V-node is red or blue with probability 1/2.
pub fn random_weak_split(b: &BipartiteInstance, seed: u64) -> TwoColoring {
    let values = (0..b.right_count())
        .map(|v| {
            let red = node_rng(seed, v as u64, 0).gen_bool(0.5);
            Some(if red { Color::Red } else { Color::Blue })
        })
        .collect();
    TwoColoring { values }
}

pub(crate) fn random_split_with_retries(b: &BipartiteInstance, seed: u64, limit: u32) -> Result<SplitRun> {
    for attempt in 0..=limit {
        let coloring = random_weak_split(b, substream(seed, attempt as u64));
        if unsatisfied_left(b, &coloring).is_empty() {
            let mut ledger = RoundLedger::new();
            ledger.charge("random coloring", 0, 0.0, "0");
            ledger.charge("verify", 1, 1.0, "1");
            return Ok(SplitRun { coloring, ledger, retries: attempt });
        }
    }
    Err(Error::RetryExhausted(limit + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RandomizedConfig {
    /// `c` in the gate `delta >= c * log(r * log n)`.
    pub gate_constant: f64,
    pub retry_limit: u32,
    /// `K` in the component budget `K * r^4 * log^6 n`.
    pub component_budget: f64,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        RandomizedConfig { gate_constant: 32.0, retry_limit: 10, component_budget: 64.0 }
    }
}

/// Copies a component's coloring back into the parent coloring.
fn merge(into: &mut TwoColoring, comp: &Component, part: &TwoColoring) {
    for (j, &v) in comp.right_map.iter().enumerate() {
        into.values[v] = part.values[j];
    }
}

/// Components run in parallel, so the slowest one is what gets charged.
fn charge_slowest(ledger: &mut RoundLedger, prefix: &str, parts: Vec<RoundLedger>) {
    let count = parts.len();
    if let Some(slowest) = parts.into_iter().max_by(|a, b| {
        a.total_simulated().cmp(&b.total_simulated()).then(a.total_nominal().total_cmp(&b.total_nominal()))
    }) {
        ledger.absorb(&format!("{prefix} (slowest of {count})"), slowest);
    }
}

/// Randomized weak splitting for `delta >= c * log(r * log n)`.
///
/// U-nodes are first split so that the max degree is below twice the min degree. If
/// `delta > 2 log n` a verified random coloring is used. Otherwise the instance is
/// shattered and each residual component, which then has `delta_H >= 2 log n_H`, is
/// finished by [`weak_split_speedup`]. Failed attempts restart on a fresh random stream.
pub fn randomized_weak_split(b: &BipartiteInstance, seed: u64, config: &RandomizedConfig) -> Result<SplitRun> {
    if b.left_count() == 0 {
        return Ok(SplitRun {
            coloring: TwoColoring::all_red(b.right_count()),
            ledger: RoundLedger::new(),
            retries: 0,
        });
    }
    let (delta, rank) = (b.min_left_degree(), b.rank());
    let inner = rank as f64 * log2n(b.n());
    let required = if inner > 1.0 { config.gate_constant * inner.log2() } else { 0.0 };
    if (delta as f64) < required {
        return Err(Error::PreconditionDelta { delta, required });
    }
    let (split, _) = split_heavy_left_nodes(b, delta)?;
    let n = split.n();
    let log_n = log2n(n);
    if delta as f64 > 2.0 * log_n {
        return random_split_with_retries(&split, seed, config.retry_limit);
    }
    let budget = config.component_budget * (rank as f64).powi(4) * log_n.powi(6);
    for attempt in 0..=config.retry_limit {
        let outcome = shatter(&split, substream(seed, attempt as u64));
        let comps = outcome.components(&split);
        let mut coloring = outcome.coloring.clone();
        let mut parts = Vec::with_capacity(comps.len());
        let mut usable = true;
        for comp in &comps {
            if comp.n() as f64 > budget {
                return Err(Error::ComponentTooLarge { size: comp.n(), budget });
            }
            let h = &comp.instance;
            if (h.min_left_degree() as f64) < 2.0 * log2n(h.n()) {
                debug!("attempt {attempt}: component of {} nodes below 2 log n_H", h.n());
                usable = false;
                break;
            }
            let (part, ledger) = weak_split_speedup(h)?;
            merge(&mut coloring, comp, &part);
            parts.push(ledger);
        }
        if !usable {
            continue;
        }
        coloring.fill_red();
        if !unsatisfied_left(&split, &coloring).is_empty() {
            continue;
        }
        let mut ledger = outcome.ledger;
        charge_slowest(&mut ledger, "component", parts);
        return Ok(SplitRun { coloring, ledger, retries: attempt });
    }
    Err(Error::RetryExhausted(config.retry_limit + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GirthConfig {
    /// `c` in `delta >= c * sqrt(ln n)`.
    pub delta_constant: f64,
    /// `c'` in `Delta >= c' * ln r`.
    pub degree_constant: f64,
    pub retry_limit: u32,
}

impl Default for GirthConfig {
    fn default() -> Self {
        GirthConfig { delta_constant: 2.0, degree_constant: 2.0, retry_limit: 10 }
    }
}

/// Weak splitting on instances of girth at least 10: shatter (randomly or by the
/// derandomized estimator), require `delta_H >= 6 r_H` on every residual component, and
/// finish each component with [`weak_split_delta_ge_6r`].
pub fn high_girth_weak_split(
    b: &BipartiteInstance,
    mode: SplitMode,
    seed: u64,
    config: &GirthConfig,
) -> Result<SplitRun> {
    if b.left_count() == 0 {
        return Ok(SplitRun {
            coloring: TwoColoring::all_red(b.right_count()),
            ledger: RoundLedger::new(),
            retries: 0,
        });
    }
    let girth = b.girth(9);
    if girth <= 9 {
        return Err(Error::GirthTooSmall(girth));
    }
    let ln_n = (b.n() as f64).ln();
    let delta = b.min_left_degree();
    let required = config.delta_constant * ln_n.sqrt();
    if (delta as f64) < required {
        return Err(Error::PreconditionDelta { delta, required });
    }
    let required = config.degree_constant * (b.rank().max(1) as f64).ln();
    if (b.max_left_degree() as f64) < required {
        return Err(Error::PreconditionDelta { delta: b.max_left_degree(), required });
    }
    let attempts = match mode {
        SplitMode::Deterministic => 1,
        SplitMode::Randomized => config.retry_limit + 1,
    };
    let mut last_gap = (0, 0);
    for attempt in 0..attempts {
        let outcome: ShatterOutcome = match mode {
            SplitMode::Deterministic => derandomized_shatter(b)?,
            SplitMode::Randomized => shatter(b, substream(seed, attempt as u64)),
        };
        let comps = outcome.components(b);
        if let Some(bad) = comps.iter().find(|c| !residual_gap(&c.instance)) {
            last_gap = (bad.instance.min_left_degree(), bad.instance.rank());
            debug!("attempt {attempt}: residual gap fails with {last_gap:?}");
            continue;
        }
        let mut coloring = outcome.coloring.clone();
        let mut parts = Vec::with_capacity(comps.len());
        for (i, comp) in comps.iter().enumerate() {
            let run = weak_split_delta_ge_6r(&comp.instance, mode, substream(seed, 1_000 + i as u64))?;
            merge(&mut coloring, comp, &run.coloring);
            parts.push(run.ledger);
        }
        coloring.fill_red();
        let mut ledger = outcome.ledger;
        charge_slowest(&mut ledger, "component", parts);
        return Ok(SplitRun { coloring, ledger, retries: attempt });
    }
    Err(Error::GapViolation { delta: last_gap.0, rank: last_gap.1 })
}
