//! Weak splitting solvers: the derandomized conditional-expectation splitter, its
//! trimmed and degree-reduced variants, the small-degree endgame, shattering, and the
//! randomized and high-girth pipelines built from them.

mod derand;
mod endgame;
mod estimator;
mod pipelines;
mod shatter;

pub(crate) use derand::{check_log_degree, split_with_schedule};
pub use derand::{
    derandomized_weak_split, derandomized_weak_split_traced, trim_then_split, weak_split_speedup, DerandOutcome,
    EstimatorTrace, WeakSplitProgram,
};
pub use endgame::weak_split_delta_ge_6r;
pub use estimator::Estimator;
pub use pipelines::{high_girth_weak_split, random_weak_split, randomized_weak_split, GirthConfig, RandomizedConfig};
pub use shatter::{derandomized_shatter, residual_gap, shatter, ShatterOutcome};

use serde::{Deserialize, Serialize};

use crate::engine::RoundLedger;
use crate::graph::BipartiteInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Per-V-node color; `None` means uncolored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColoring {
    pub values: Vec<Option<Color>>,
}

impl TwoColoring {
    pub fn uncolored(len: usize) -> Self {
        TwoColoring { values: vec![None; len] }
    }

    pub fn all_red(len: usize) -> Self {
        TwoColoring { values: vec![Some(Color::Red); len] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Colors every still uncolored node red.
    pub fn fill_red(&mut self) {
        for x in &mut self.values {
            x.get_or_insert(Color::Red);
        }
    }
}

/// Outcome of a seeded solver.
#[derive(Clone, Debug)]
pub struct SplitRun {
    pub coloring: TwoColoring,
    pub ledger: RoundLedger,
    /// Attempts beyond the first.
    pub retries: u32,
}

/// U-nodes lacking a red or a blue neighbor. Solver-side bookkeeping; the independent
/// checkers live in `verify`.
pub(crate) fn unsatisfied_left(b: &BipartiteInstance, coloring: &TwoColoring) -> Vec<usize> {
    (0..b.left_count())
        .filter(|&u| {
            let nb = b.left_neighbors(u);
            let red = nb.iter().any(|&v| coloring.values[v] == Some(Color::Red));
            let blue = nb.iter().any(|&v| coloring.values[v] == Some(Color::Blue));
            !(red && blue)
        })
        .collect()
}
