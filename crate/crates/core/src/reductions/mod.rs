//! Reductions from other symmetry-breaking problems to splitting: sinkless orientation
//! from weak splitting, vertex coloring from uniform splitting, MIS from strong
//! splitting, and the clique padding gadget.

mod coloring;
mod mis;
mod sinkless;
mod strong;

pub use coloring::{coloring_via_splitting, default_depth, greedy_base_coloring, uniform_split_graph, ColoringRun};
pub use mis::{greedy_mis, mis_via_splitting, mis_via_splitting_traced, HeavyIteration, MisRun, MisStats};
pub use sinkless::{pad_to_uniform, sinkless_instance, splitting_to_orientation, PaddedGraph};
pub use strong::{split_window, strong_split_bipartite, strong_split_partial, StrongSplitRun, DEFAULT_SPLIT_CONSTANT};

use serde::{Deserialize, Serialize};

use crate::weak::Color;

/// Side of every node of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub sides: Vec<Color>,
}

/// Sorted node indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub members: Vec<usize>,
}

impl IndependentSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperColoring {
    pub colors: Vec<usize>,
    pub palette: usize,
}
