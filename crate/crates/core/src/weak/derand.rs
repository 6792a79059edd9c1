use log::debug;

use super::{Color, Estimator, TwoColoring};
use crate::degree::{degree_rank_reduction_one, SplitMode};
use crate::engine::{power_graph_coloring, slocal_to_local, RoundLedger, SlocalProgram, View};
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance};

/// Conditional-expectation splitter as a radius-2 SLOCAL program on the flattened
/// instance (U-node `u` is node `u`, V-node `v` is node `|U| + v`).
///
/// A V-node's decision depends on the red/blue/undecided counts of its U-neighbors,
/// which are functions of outputs at distance 2. The counts are cached in the estimator
/// rather than recounted from the view.
pub struct WeakSplitProgram<'a> {
    instance: &'a BipartiteInstance,
    estimator: Estimator,
    exact_monotone: bool,
    trace: Vec<f64>,
}

impl<'a> WeakSplitProgram<'a> {
    pub fn new(instance: &'a BipartiteInstance) -> Self {
        let estimator = Estimator::new(instance);
        WeakSplitProgram { instance, estimator, exact_monotone: true, trace: Vec::new() }
    }

    pub fn estimator(&self) -> &Estimator {
        &self.estimator
    }
}

impl SlocalProgram for WeakSplitProgram<'_> {
    type Output = Option<Color>;

    fn radius(&self) -> usize {
        2
    }

    fn process(&mut self, node: usize, _view: &mut View<'_, Self::Output>) -> Result<Self::Output> {
        let left = self.instance.left_count();
        if node < left {
            return Ok(None);
        }
        let v = node - left;
        let color = self.estimator.choose(self.instance, v);
        let before = self.estimator.total_numerator().clone();
        self.estimator.apply(self.instance, v, color);
        if *self.estimator.total_numerator() > before {
            self.exact_monotone = false;
        }
        self.trace.push(self.estimator.total());
        Ok(Some(color))
    }
}

/// Estimator values over a run. Monotonicity and the initial bound are decided on the
/// exact dyadic values, not on the float copies.
#[derive(Clone, Debug)]
pub struct EstimatorTrace {
    pub initial: f64,
    pub initial_below_one: bool,
    pub values: Vec<f64>,
    pub non_increasing: bool,
    pub final_unsatisfied: usize,
}

#[derive(Clone, Debug)]
pub struct DerandOutcome {
    pub coloring: TwoColoring,
    pub ledger: RoundLedger,
    pub trace: EstimatorTrace,
}

pub(crate) fn check_log_degree(b: &BipartiteInstance) -> Result<()> {
    let n = b.n();
    if n < 4 {
        return Err(Error::PreconditionSize(n));
    }
    let required = 2.0 * log2n(n);
    let delta = b.min_left_degree();
    if (delta as f64) < required {
        return Err(Error::PreconditionDelta { delta, required });
    }
    Ok(())
}

fn trivial(b: &BipartiteInstance) -> DerandOutcome {
    DerandOutcome {
        coloring: TwoColoring::all_red(b.right_count()),
        ledger: RoundLedger::new(),
        trace: EstimatorTrace {
            initial: 0.0,
            initial_below_one: true,
            values: Vec::new(),
            non_increasing: true,
            final_unsatisfied: 0,
        },
    }
}

pub fn derandomized_weak_split(b: &BipartiteInstance) -> Result<(TwoColoring, RoundLedger)> {
    let out = derandomized_weak_split_traced(b)?;
    Ok((out.coloring, out.ledger))
}

/// Deterministic weak splitting for `delta >= 2 log n`: V-nodes take the color that
/// minimizes the estimator, scheduled class by class over a distance-2 coloring of `B`.
pub fn derandomized_weak_split_traced(b: &BipartiteInstance) -> Result<DerandOutcome> {
    if b.left_count() == 0 {
        return Ok(trivial(b));
    }
    check_log_degree(b)?;
    let left = b.left_count();
    let g = b.to_sim_graph();
    let pc = power_graph_coloring(&g, 2)?;
    let schedule: Vec<usize> = pc.colors[left..].to_vec();
    let dr = (b.max_left_degree() * b.rank()) as f64;
    let mut out = split_with_schedule(b, &schedule, (dr, "Delta * r"))?;
    let mut ledger = RoundLedger::new();
    ledger.charge("distance-2 coloring", pc.rounds, pc.nominal, "Delta(B^2) + log* n");
    ledger.phases.append(&mut out.ledger.phases);
    out.ledger = ledger;
    Ok(out)
}

/// Runs the conditional-expectation program with V-node `v` processed in phase
/// `schedule[v]`. The schedule must be a distance-2 coloring of the V-nodes of `b`.
pub(crate) fn split_with_schedule(
    b: &BipartiteInstance,
    schedule: &[usize],
    nominal: (f64, &str),
) -> Result<DerandOutcome> {
    let left = b.left_count();
    let g = b.to_sim_graph();
    let schedule: Vec<Option<usize>> = (0..g.node_count()).map(|x| (x >= left).then(|| schedule[x - left])).collect();
    let mut program = WeakSplitProgram::new(b);
    let initial = program.estimator.total();
    let initial_below_one = program.estimator.below_one();
    let run = slocal_to_local(&mut program, &g, 2, &schedule)?;
    let values: Vec<Option<Color>> = run.outputs[left..].iter().map(|o| o.flatten()).collect();
    let mut ledger = RoundLedger::new();
    ledger.charge("conditional expectations", run.rounds, nominal.0, nominal.1);
    debug!(
        "derandomized split: n {}, {} classes, estimator {initial} -> {}",
        b.n(),
        run.classes,
        program.estimator.total()
    );
    Ok(DerandOutcome {
        coloring: TwoColoring { values },
        ledger,
        trace: EstimatorTrace {
            initial,
            initial_below_one,
            values: program.trace,
            non_increasing: program.exact_monotone,
            final_unsatisfied: program.estimator.settled_unsatisfied(),
        },
    })
}

/// Keeps the `ceil(2 log n)` lowest-indexed edges of every U-node and splits the
/// trimmed instance; any weak splitting of it is one of `b`.
pub fn trim_then_split(b: &BipartiteInstance) -> Result<(TwoColoring, RoundLedger)> {
    if b.left_count() == 0 {
        return Ok((TwoColoring::all_red(b.right_count()), RoundLedger::new()));
    }
    check_log_degree(b)?;
    let t = (2.0 * log2n(b.n())).ceil() as usize;
    let cutoff: Vec<usize> = (0..b.left_count()).map(|u| b.left_neighbors(u)[t - 1]).collect();
    let trimmed = b.retain_edges(|u, v| v <= cutoff[u]);
    let (coloring, inner) = derandomized_weak_split(&trimmed)?;
    let mut ledger = RoundLedger::new();
    ledger.charge("trim", 0, 0.0, "local");
    ledger.absorb("trimmed", inner);
    Ok((coloring, ledger))
}

/// Deterministic weak splitting for `delta >= 2 log n`. Large minimum degrees are first
/// reduced by `k = floor(log(delta / (12 log n)))` rounds of degree splitting with
/// `eps = min(1/k, 1/3)`, which shrinks the rank by about the same factor.
pub fn weak_split_speedup(b: &BipartiteInstance) -> Result<(TwoColoring, RoundLedger)> {
    if b.left_count() == 0 {
        return Ok((TwoColoring::all_red(b.right_count()), RoundLedger::new()));
    }
    check_log_degree(b)?;
    let log_n = log2n(b.n());
    let delta = b.min_left_degree() as f64;
    if delta <= 48.0 * log_n {
        return trim_then_split(b);
    }
    let k = (delta / (12.0 * log_n)).log2().floor() as usize;
    let eps = (1.0 / k as f64).min(1.0 / 3.0);
    let (reduced, reduce) = degree_rank_reduction_one(b, eps, k, SplitMode::Deterministic)?;
    let (dk, rk) = (reduced.min_left_degree() as f64, reduced.rank() as f64);
    let rank_bound = 24.0 * std::f64::consts::E * (b.rank() as f64 / delta) * log_n + 3.0;
    debug!("speedup: k {k}, eps {eps:.3}, delta {delta} -> {dk}, rank {} -> {rk}", b.rank());
    if dk < 2.0 * log_n || dk < 12.0 * log_n - 2.0 {
        return Err(Error::ShrinkageViolation {
            iteration: k,
            detail: format!("reduced min degree {dk} below max(2 log n, 12 log n - 2)"),
        });
    }
    if rk > rank_bound {
        return Err(Error::ShrinkageViolation {
            iteration: k,
            detail: format!("reduced rank {rk} above {rank_bound:.3}"),
        });
    }
    let (coloring, split) = trim_then_split(&reduced)?;
    let mut ledger = RoundLedger::new();
    ledger.absorb("reduce", reduce);
    ledger.absorb("split", split);
    Ok((coloring, ledger))
}
