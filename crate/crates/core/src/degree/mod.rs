//! Degree splitting by Euler tours and the two degree-rank reductions built on it.

mod euler;
mod reduction;

pub use euler::{directed_degree_split, directed_degree_split_with, nominal_degree_split};
pub use reduction::{
    build_pairing_multigraph, degree_rank_reduction_one, degree_rank_reduction_one_traced, degree_rank_reduction_two,
    degree_rank_reduction_two_traced, PairingMultigraph, ReductionRun,
};

use serde::{Deserialize, Serialize};

/// Orientation of a graph's edges: `arcs[e] = (tail, head)` for edge index `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrientation {
    pub arcs: Vec<(usize, usize)>,
}

/// Which nominal round charge a phase is booked under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitMode {
    Deterministic,
    Randomized,
}
