use serde::{Deserialize, Serialize};

use super::{BipartiteInstance, SimGraph};
use crate::error::Result;

/// On-disk bipartite instance: `{"left": L, "right": R, "edges": [[u, v], ...]}`,
/// 0-based, edges sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<[usize; 2]>,
}

/// On-disk general graph: `{"nodes": n, "edges": [[a, b], ...]}` with optional IDs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<u64>>,
    pub edges: Vec<[usize; 2]>,
}

/// Either file shape; told apart by their keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceFile {
    Bipartite(InstanceJson),
    Graph(GraphJson),
}

impl From<&BipartiteInstance> for InstanceJson {
    fn from(b: &BipartiteInstance) -> Self {
        InstanceJson {
            left: b.left_count(),
            right: b.right_count(),
            edges: b.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl InstanceJson {
    pub fn into_instance(self) -> Result<BipartiteInstance> {
        BipartiteInstance::new(self.left, self.right, self.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl From<&SimGraph> for GraphJson {
    fn from(g: &SimGraph) -> Self {
        let identity = g.ids().iter().enumerate().all(|(i, &id)| id == i as u64);
        GraphJson {
            nodes: g.node_count(),
            ids: (!identity).then(|| g.ids().to_vec()),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl GraphJson {
    pub fn into_graph(self) -> Result<SimGraph> {
        let edges = self.edges.into_iter().map(|[a, b]| (a, b)).collect();
        match self.ids {
            Some(ids) => SimGraph::with_ids(ids, edges),
            None => SimGraph::new(self.nodes, edges),
        }
    }
}

impl BipartiteInstance {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<InstanceJson>(text)?.into_instance()
    }
}

impl SimGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GraphJson>(text)?.into_graph()
    }
}
