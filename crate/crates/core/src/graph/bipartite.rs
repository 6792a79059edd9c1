use super::{check_index, SimGraph};
use crate::error::{Error, Result};

/// Bipartite graph `B = (U ∪ V, E)`. Left nodes (U) are constraints, right nodes (V)
/// are variables. Both sides are indexed from 0 and the index doubles as the node ID.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteInstance {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Builds an instance from `(u, v)` pairs; rejects out-of-range indices and duplicates.
    pub fn new(left: usize, right: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            check_index(u, left)?;
            check_index(v, right)?;
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(left, right, edges))
    }

    fn from_sorted(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut left_adj = vec![Vec::new(); left];
        let mut right_adj = vec![Vec::new(); right];
        for &(u, v) in &edges {
            left_adj[u].push(v);
            right_adj[v].push(u);
        }
        // edges are sorted by (u, v), so left lists come out sorted; right lists too,
        // because u is pushed in increasing order
        BipartiteInstance { left, right, edges, left_adj, right_adj }
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    /// Total node count `|U| + |V|`.
    pub fn n(&self) -> usize {
        self.left + self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted lexicographically by `(u, v)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn left_neighbors(&self, u: usize) -> &[usize] {
        &self.left_adj[u]
    }

    pub fn right_neighbors(&self, v: usize) -> &[usize] {
        &self.right_adj[v]
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.left_adj[u].len()
    }

    pub fn right_degree(&self, v: usize) -> usize {
        self.right_adj[v].len()
    }

    /// Minimum U-degree; 0 when U is empty.
    pub fn min_left_degree(&self) -> usize {
        self.left_adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_left_degree(&self) -> usize {
        self.left_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum V-degree.
    pub fn rank(&self) -> usize {
        self.right_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.left_adj[u].binary_search(&v).is_ok()
    }

    /// Same node sets, keeping only the edges accepted by `keep`.
    pub fn retain_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Self::from_sorted(self.left, self.right, edges)
    }

    /// Flattens to a [`SimGraph`]: U-node `u` becomes `u`, V-node `v` becomes `|U| + v`.
    pub fn to_sim_graph(&self) -> SimGraph {
        let edges = self.edges.iter().map(|&(u, v)| (u, self.left + v)).collect();
        SimGraph::new(self.n(), edges).expect("bipartite edges are distinct")
    }

    /// Exact girth if at most `cap`, otherwise `cap + 1`.
    pub fn girth(&self, cap: usize) -> usize {
        super::girth(&self.to_sim_graph(), cap)
    }
}

/// Maps the virtual U-nodes produced by [`super::split_heavy_left_nodes`] to their origins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualNodeMap {
    pub origin: Vec<usize>,
    pub virtuals: Vec<Vec<usize>>,
}
