use crate::degree::EdgeOrientation;
use crate::error::{Error, Result};
use crate::graph::{BipartiteInstance, SimGraph};
use crate::weak::{Color, TwoColoring};

/// Weak splitting instance whose solutions orient `g` without sinks.
///
/// Right node `e` is edge `e` of `g`. A node with at least half of its neighbors of
/// larger ID is joined to its edges towards larger IDs, any other node to its edges
/// towards smaller IDs. Ranks are at most 2 and left degrees at least `ceil(delta_g / 2)`.
pub fn sinkless_instance(g: &SimGraph) -> Result<BipartiteInstance> {
    if g.node_count() > 0 && g.min_degree() < 5 {
        return Err(Error::MinDegreeTooSmall(g.min_degree()));
    }
    let mut edges = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    for (u, list) in incident.iter().enumerate() {
        let larger = g.neighbors(u).iter().filter(|&&v| g.id(v) > g.id(u)).count();
        let upward = 2 * larger >= g.degree(u);
        for &e in list {
            let (a, b) = g.edges()[e];
            let other = if a == u { b } else { a };
            if (g.id(other) > g.id(u)) == upward {
                edges.push((u, e));
            }
        }
    }
    BipartiteInstance::new(g.node_count(), g.edge_count(), edges)
}

/// Red edges point from the smaller to the larger ID, blue edges the other way.
/// Uncolored edges follow the red rule.
pub fn splitting_to_orientation(
    g: &SimGraph,
    inst: &BipartiteInstance,
    coloring: &TwoColoring,
) -> Result<EdgeOrientation> {
    if coloring.values.len() != g.edge_count() || inst.right_count() != g.edge_count() {
        return Err(Error::IncompleteColoring { got: coloring.values.len(), expected: g.edge_count() });
    }
    let unsatisfied = (0..inst.left_count())
        .filter(|&u| {
            let nb = inst.left_neighbors(u);
            !(nb.iter().any(|&e| coloring.values[e] == Some(Color::Red))
                && nb.iter().any(|&e| coloring.values[e] == Some(Color::Blue)))
        })
        .count();
    if unsatisfied > 0 {
        return Err(Error::NotAWeakSplitting(unsatisfied));
    }
    let arcs = g
        .edges()
        .iter()
        .zip(&coloring.values)
        .map(|(&(a, b), color)| {
            let (lo, hi) = if g.id(a) < g.id(b) { (a, b) } else { (b, a) };
            match color {
                Some(Color::Blue) => (hi, lo),
                _ => (lo, hi),
            }
        })
        .collect();
    Ok(EdgeOrientation { arcs })
}

/// A graph with clique gadgets attached. Nodes `0..original` are the input nodes.
#[derive(Clone, Debug)]
pub struct PaddedGraph {
    pub graph: SimGraph,
    pub original: usize,
    pub gadget: Vec<bool>,
}

/// Raises every node of degree below `delta` to degree `delta` by building a
/// `delta`-clique and joining `delta - deg(v)` of its nodes to `v`. Gadget nodes end
/// with degree at most `delta`. Expects `delta >= max(1, Delta / 2)`.
pub fn pad_to_uniform(g: &SimGraph, delta: usize) -> PaddedGraph {
    let n = g.node_count();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut ids: Vec<u64> = g.ids().to_vec();
    let mut next_id = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut total = n;
    for v in 0..n {
        let d = g.degree(v);
        if d >= delta {
            continue;
        }
        let base = total;
        for i in 0..delta {
            for j in i + 1..delta {
                edges.push((base + i, base + j));
            }
            ids.push(next_id);
            next_id += 1;
        }
        edges.extend((0..delta - d).map(|i| (v, base + i)));
        total += delta;
    }
    let graph = SimGraph::with_ids(ids, edges).expect("gadget edges are fresh");
    let gadget = (0..total).map(|x| x >= n).collect();
    PaddedGraph { graph, original: n, gadget }
}
