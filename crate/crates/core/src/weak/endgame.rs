use log::debug;

use super::{pipelines::random_split_with_retries, weak_split_speedup, Color, SplitRun, TwoColoring};
use crate::degree::{degree_rank_reduction_two, SplitMode};
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance};

/// Weak splitting when `delta >= 6 r`.
///
/// With `delta >= 2 log n` the instance goes to [`weak_split_speedup`] (deterministic
/// mode) or to a verified random coloring (randomized mode). Otherwise
/// `ceil(log r)` rounds of pairing-based degree-rank reduction bring the rank down to 1
/// while every U-node keeps at least two edges; each U-node then colors one of its
/// private neighbors red and another blue.
pub fn weak_split_delta_ge_6r(b: &BipartiteInstance, mode: SplitMode, seed: u64) -> Result<SplitRun> {
    if b.left_count() == 0 {
        return Ok(SplitRun {
            coloring: TwoColoring::all_red(b.right_count()),
            ledger: RoundLedger::new(),
            retries: 0,
        });
    }
    let (delta, rank) = (b.min_left_degree(), b.rank());
    if delta < 6 * rank {
        return Err(Error::PreconditionRatio { delta, rank });
    }
    if delta as f64 >= 2.0 * log2n(b.n()) {
        return match mode {
            SplitMode::Deterministic => {
                let (coloring, ledger) = weak_split_speedup(b)?;
                Ok(SplitRun { coloring, ledger, retries: 0 })
            }
            SplitMode::Randomized => random_split_with_retries(b, seed, 10),
        };
    }
    let iterations = (rank as f64).log2().ceil() as usize;
    let eps = 1.0 / (20.0 * delta as f64);
    let (reduced, reduce) = degree_rank_reduction_two(b, eps, iterations, mode)?;
    debug!(
        "endgame: delta {delta}, rank {rank}, {iterations} iterations -> delta {}, rank {}",
        reduced.min_left_degree(),
        reduced.rank()
    );
    if reduced.rank() > 1 || reduced.min_left_degree() < 2 {
        return Err(Error::ShrinkageViolation {
            iteration: iterations,
            detail: format!(
                "endgame needs rank 1 and min degree 2, got rank {} and min degree {}",
                reduced.rank(),
                reduced.min_left_degree()
            ),
        });
    }
    let mut coloring = TwoColoring::uncolored(b.right_count());
    for u in 0..reduced.left_count() {
        let nb = reduced.left_neighbors(u);
        coloring.values[nb[0]] = Some(Color::Red);
        coloring.values[nb[1]] = Some(Color::Blue);
    }
    coloring.fill_red();
    let mut ledger = RoundLedger::new();
    ledger.absorb("reduce-rank", reduce);
    ledger.charge("pick two", 1, 1.0, "1");
    Ok(SplitRun { coloring, ledger, retries: 0 })
}
