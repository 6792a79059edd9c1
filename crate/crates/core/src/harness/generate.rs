use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::rng::substream;
use crate::error::{Error, Result};
use crate::graph::{BipartiteInstance, InstanceFile, SimGraph};

/// Instance families. Every generator is deterministic in its seed and either meets its
/// declared constraints or fails with `InfeasibleParams`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// U-degrees uniform in `[min_degree, max_degree]`, V-degrees at most `rank`.
    RandomBipartite {
        left: usize,
        right: usize,
        min_degree: usize,
        max_degree: usize,
        rank: usize,
    },
    /// Every U-node has exactly `degree` neighbors.
    LeftRegular {
        left: usize,
        right: usize,
        degree: usize,
    },
    /// Tree rooted at a U-node. U-nodes have degree `u_deg`, inner V-nodes `v_deg`, and
    /// there are `depth` levels of U-nodes.
    BipartiteTree {
        depth: usize,
        u_deg: usize,
        v_deg: usize,
    },
    /// Random simple graph with every degree at least `min_degree`.
    MinDegreeGraph {
        nodes: usize,
        min_degree: usize,
    },
    /// Random simple graph with max degree `degree`, most nodes close to it. Dense
    /// requests (`nodes - 1 - degree <= 3`, `2 degree >= nodes`) are exactly regular.
    NearRegular {
        nodes: usize,
        degree: usize,
    },
    /// `hubs` nodes, each joined to `degree` distinct random nodes among `leaves` others.
    Hubs {
        hubs: usize,
        leaves: usize,
        degree: usize,
    },
    Complete {
        nodes: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
}

#[derive(Clone, Debug)]
pub enum Generated {
    Graph(SimGraph),
    Bipartite(BipartiteInstance),
}

impl Generated {
    pub fn n(&self) -> usize {
        match self {
            Generated::Graph(g) => g.node_count(),
            Generated::Bipartite(b) => b.n(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Generated::Graph(g) => g.edge_count(),
            Generated::Bipartite(b) => b.edge_count(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Generated::Graph(g) => g.to_json(),
            Generated::Bipartite(b) => b.to_json(),
        }
    }

    /// Reads either instance file shape.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(match serde_json::from_str::<InstanceFile>(text)? {
            InstanceFile::Bipartite(b) => Generated::Bipartite(b.into_instance()?),
            InstanceFile::Graph(g) => Generated::Graph(g.into_graph()?),
        })
    }
}

fn infeasible(msg: String) -> Error {
    Error::InfeasibleParams(msg)
}

pub fn generate(kind: &GeneratorKind, seed: u64) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(substream(seed, 0x6e6e));
    match *kind {
        GeneratorKind::RandomBipartite { left, right, min_degree, max_degree, rank } => {
            random_bipartite(left, right, min_degree, max_degree, rank, &mut rng).map(Generated::Bipartite)
        }
        GeneratorKind::LeftRegular { left, right, degree } => {
            random_bipartite(left, right, degree, degree, left.max(1), &mut rng).map(Generated::Bipartite)
        }
        GeneratorKind::BipartiteTree { depth, u_deg, v_deg } => {
            bipartite_tree(depth, u_deg, v_deg).map(Generated::Bipartite)
        }
        GeneratorKind::MinDegreeGraph { nodes, min_degree } => {
            min_degree_graph(nodes, min_degree, &mut rng).map(Generated::Graph)
        }
        GeneratorKind::NearRegular { nodes, degree } => near_regular(nodes, degree, &mut rng).map(Generated::Graph),
        GeneratorKind::Hubs { hubs, leaves, degree } => {
            if degree > leaves {
                return Err(infeasible(format!("hub degree {degree} with {leaves} leaves")));
            }
            let mut pool: Vec<usize> = (hubs..hubs + leaves).collect();
            let mut edges = Vec::with_capacity(hubs * degree);
            for h in 0..hubs {
                pool.partial_shuffle(&mut rng, degree);
                edges.extend(pool[..degree].iter().map(|&l| (h, l)));
            }
            SimGraph::new(hubs + leaves, edges).map(Generated::Graph)
        }
        GeneratorKind::Complete { nodes } => {
            let edges = (0..nodes).flat_map(|a| (a + 1..nodes).map(move |b| (a, b))).collect();
            SimGraph::new(nodes, edges).map(Generated::Graph)
        }
        GeneratorKind::Grid { rows, cols } => {
            let at = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((at(r, c), at(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((at(r, c), at(r + 1, c)));
                    }
                }
            }
            SimGraph::new(rows * cols, edges).map(Generated::Graph)
        }
    }
}

fn random_bipartite(
    left: usize,
    right: usize,
    min_degree: usize,
    max_degree: usize,
    rank: usize,
    rng: &mut ChaCha8Rng,
) -> Result<BipartiteInstance> {
    if min_degree > max_degree || max_degree > right {
        return Err(infeasible(format!("U-degrees in [{min_degree}, {max_degree}] with {right} V-nodes")));
    }
    if rank == 0 && left > 0 && max_degree > 0 {
        return Err(infeasible("rank 0 with nonempty U-neighborhoods".into()));
    }
    let degrees: Vec<usize> = (0..left).map(|_| rng.gen_range(min_degree..=max_degree)).collect();
    let total: usize = degrees.iter().sum();
    if total > right * rank {
        return Err(infeasible(format!("{total} edges do not fit {right} V-nodes of rank {rank}")));
    }
    // V-nodes with spare capacity; a full node is swap-removed
    let mut open: Vec<usize> = (0..right).collect();
    let mut load = vec![0usize; right];
    let mut edges = Vec::with_capacity(total);
    let mut picked = HashSet::new();
    for (u, &d) in degrees.iter().enumerate() {
        if open.len() < d {
            return Err(infeasible(format!("U-node {u} needs {d} neighbors, {} V-nodes have room", open.len())));
        }
        picked.clear();
        let mut slots = Vec::with_capacity(d);
        if 2 * d >= open.len() {
            let mut idx: Vec<usize> = (0..open.len()).collect();
            idx.partial_shuffle(rng, d);
            slots.extend_from_slice(&idx[..d]);
        } else {
            while slots.len() < d {
                let i = rng.gen_range(0..open.len());
                if picked.insert(i) {
                    slots.push(i);
                }
            }
        }
        // remove full nodes from the back so earlier slot indices stay valid
        slots.sort_unstable_by(|a, b| b.cmp(a));
        for i in slots {
            let v = open[i];
            edges.push((u, v));
            load[v] += 1;
            if load[v] == rank {
                open.swap_remove(i);
            }
        }
    }
    BipartiteInstance::new(left, right, edges)
}

fn bipartite_tree(depth: usize, u_deg: usize, v_deg: usize) -> Result<BipartiteInstance> {
    if depth == 0 || u_deg == 0 || v_deg == 0 {
        return Err(infeasible("tree needs positive depth and degrees".into()));
    }
    let mut edges = Vec::new();
    let (mut left, mut right) = (1usize, 0usize);
    let mut frontier = vec![0usize];
    for level in 0..depth {
        let mut children = Vec::new();
        for (i, &u) in frontier.iter().enumerate() {
            let fanout = if level == 0 && i == 0 { u_deg } else { u_deg - 1 };
            for _ in 0..fanout {
                edges.push((u, right));
                children.push(right);
                right += 1;
            }
        }
        if level + 1 == depth {
            break;
        }
        frontier.clear();
        for v in children {
            for _ in 1..v_deg {
                edges.push((left, v));
                frontier.push(left);
                left += 1;
            }
        }
        if edges.len() > 50_000_000 {
            return Err(infeasible("tree exceeds 5e7 edges".into()));
        }
    }
    BipartiteInstance::new(left, right, edges)
}

fn min_degree_graph(nodes: usize, min_degree: usize, rng: &mut ChaCha8Rng) -> Result<SimGraph> {
    if min_degree > 0 && nodes <= min_degree {
        return Err(infeasible(format!("{nodes} nodes cannot have min degree {min_degree}")));
    }
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); nodes];
    let mut order: Vec<usize> = (0..nodes).collect();
    order.shuffle(rng);
    for &v in &order {
        while adj[v].len() < min_degree {
            let u = rng.gen_range(0..nodes);
            if u != v && adj[v].insert(u) {
                adj[u].insert(v);
            }
        }
    }
    let edges = (0..nodes).flat_map(|v| adj[v].iter().filter(move |&&u| u > v).map(move |&u| (v, u))).collect();
    SimGraph::new(nodes, edges)
}

fn near_regular(nodes: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<SimGraph> {
    if degree >= nodes.max(1) {
        return Err(infeasible(format!("{nodes} nodes cannot have degree {degree}")));
    }
    let missing = nodes - 1 - degree;
    if missing <= 3 && 2 * degree >= nodes {
        // dense case: complement of a random exactly `missing`-regular graph
        let sparse = regular_by_rejection(nodes, missing, rng)?;
        let edges =
            (0..nodes).flat_map(|a| (a + 1..nodes).map(move |b| (a, b))).filter(|e| !sparse.contains(e)).collect();
        return SimGraph::new(nodes, edges);
    }
    // configuration model; loops and repeated pairs are dropped
    let mut stubs: Vec<usize> = (0..nodes).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    stubs.shuffle(rng);
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if a != b && seen.insert((a, b)) {
            edges.push((a, b));
        }
    }
    SimGraph::new(nodes, edges)
}

/// Pairing model restarted until the pairing is simple.
fn regular_by_rejection(nodes: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<HashSet<(usize, usize)>> {
    if nodes * degree % 2 == 1 {
        return Err(infeasible(format!("no {degree}-regular graph on {nodes} nodes")));
    }
    let mut stubs: Vec<usize> = (0..nodes).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    'attempt: for _ in 0..10_000 {
        stubs.shuffle(rng);
        let mut seen = HashSet::new();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'attempt;
            }
        }
        return Ok(seen);
    }
    Err(infeasible(format!("no simple {degree}-regular pairing on {nodes} nodes found")))
}
