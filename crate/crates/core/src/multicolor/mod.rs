//! Multicolor splittings: random base colorings, iterated refinement that shrinks the
//! per-color load, and the reduction from weak multicolor splitting to weak splitting.

mod base;
mod iterate;
mod reduce;

pub use base::{choose_cprime, multicolor_split_base, random_multicolor, tail_bounds, TailBounds};
pub use iterate::{multicolor_split_iterate, IterateOutcome};
pub use reduce::weak_multicolor_to_weaksplit;

use serde::{Deserialize, Serialize};

/// Color per V-node, drawn from `0..palette`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiColoring {
    pub colors: Vec<usize>,
    pub palette: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulticolorParams {
    /// Colors available to one splitting step.
    pub colors: usize,
    /// Target fraction of a U-node's neighbors that one color may take.
    pub lambda: f64,
    /// Virtual nodes of degree below `(alpha / lambda) ln n` are dropped.
    pub alpha: f64,
    /// Iterated splitting expects U-degrees of at least `beta ln^2 n`.
    pub beta: f64,
    pub retry_limit: u32,
    /// Largest palette the iteration may build.
    pub palette_cap: usize,
}

impl MulticolorParams {
    /// `alpha = 2` and `beta = 4 alpha / lambda`. A dropped virtual node keeps fewer than
    /// `(alpha / lambda) ln n_j` neighbors of its color, and this `beta` keeps that below
    /// the final load `deg / (2 log n)` with room for `n_j` exceeding `n`.
    pub fn new(colors: usize, lambda: f64) -> Self {
        let alpha = 2.0;
        MulticolorParams { colors, lambda, alpha, beta: 4.0 * alpha / lambda, retry_limit: 10, palette_cap: 1 << 24 }
    }
}
