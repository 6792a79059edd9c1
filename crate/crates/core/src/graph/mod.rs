//! Graph containers: general simulation graphs and bipartite splitting instances.

mod bipartite;
mod json;
mod ops;

pub use bipartite::{BipartiteInstance, VirtualNodeMap};
pub use json::{GraphJson, InstanceFile, InstanceJson};
pub use ops::{connected_components, girth, graph_to_weaksplit_instance, split_heavy_left_nodes, Component};

use crate::error::{Error, Result};

/// Undirected graph with distinct node IDs.
///
/// Simple graphs keep their edges sorted as `(min, max)` pairs. Multigraphs keep the
/// insertion order, since callers attach meaning to edge indices there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimGraph {
    ids: Vec<u64>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    multigraph: bool,
}

impl SimGraph {
    /// Simple graph on nodes `0..n` whose IDs equal their indices.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_ids((0..n as u64).collect(), edges)
    }

    /// Simple graph with explicit node IDs.
    pub fn with_ids(ids: Vec<u64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = ids.len();
        let mut canon = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            check_index(a, n)?;
            check_index(b, n)?;
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut sorted_ids = ids.clone();
        sorted_ids.sort_unstable();
        if sorted_ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ParamViolation("node IDs must be distinct".into()));
        }
        Ok(Self::assemble(ids, canon, false))
    }

    /// Multigraph on nodes `0..n`; parallel edges and self-loops are kept as given.
    pub fn multigraph(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            check_index(a, n)?;
            check_index(b, n)?;
        }
        Ok(Self::assemble((0..n as u64).collect(), edges, true))
    }

    fn assemble(ids: Vec<u64>, edges: Vec<(usize, usize)>, multigraph: bool) -> Self {
        let mut adjacency = vec![Vec::new(); ids.len()];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        SimGraph { ids, edges, adjacency, multigraph }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list; a neighbor appears once per connecting edge.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Subgraph induced by the nodes with `keep[v]`, plus the map from new to old indices.
    /// IDs are carried over.
    pub fn induced(&self, keep: &[bool]) -> (SimGraph, Vec<usize>) {
        let map: Vec<usize> = (0..self.node_count()).filter(|&v| keep[v]).collect();
        let mut back = vec![usize::MAX; self.node_count()];
        for (i, &v) in map.iter().enumerate() {
            back[v] = i;
        }
        let edges = self.edges.iter().filter(|&&(a, b)| keep[a] && keep[b]).map(|&(a, b)| (back[a], back[b])).collect();
        let ids = map.iter().map(|&v| self.ids[v]).collect();
        let mut edges: Vec<(usize, usize)> = edges;
        if !self.multigraph {
            edges.sort_unstable();
        }
        (Self::assemble(ids, edges, self.multigraph), map)
    }
}

pub(crate) fn check_index(index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, bound })
    }
}

/// `log2(n)`, with `log2(n) = 0` for `n <= 1`.
pub fn log2n(n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        (n as f64).log2()
    }
}
