use log::debug;

use super::{strong_split_partial, Partition, ProperColoring, DEFAULT_SPLIT_CONSTANT};
use crate::engine::RoundLedger;
use crate::error::Result;
use crate::graph::{graph_to_weaksplit_instance, log2n, SimGraph};
use crate::weak::Color;

/// Nodes in ascending ID order.
pub(crate) fn id_order(g: &SimGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_unstable_by_key(|&v| g.id(v));
    order
}

/// Rounds of the distributed run of an ID-ordered greedy: a node decides once all of its
/// smaller-ID neighbors have, so this is the longest ID-increasing path (in nodes).
pub(crate) fn id_order_waves(g: &SimGraph) -> u64 {
    let mut wave = vec![0u64; g.node_count()];
    for v in id_order(g) {
        let w = g.neighbors(v).iter().filter(|&&u| g.id(u) < g.id(v)).map(|&u| wave[u]).max();
        wave[v] = w.unwrap_or(0) + 1;
    }
    wave.into_iter().max().unwrap_or(0)
}

/// Greedy coloring in ID order with the smallest free color; at most `Delta + 1` colors.
pub fn greedy_base_coloring(g: &SimGraph) -> ProperColoring {
    let mut colors = vec![usize::MAX; g.node_count()];
    let mut used = vec![false; g.max_degree() + 2];
    for v in id_order(g) {
        for &u in g.neighbors(v) {
            if colors[u] < used.len() {
                used[colors[u]] = true;
            }
        }
        let c = used.iter().position(|&x| !x).expect("Delta + 1 slots suffice");
        colors[v] = c;
        for &u in g.neighbors(v) {
            if colors[u] < used.len() {
                used[colors[u]] = false;
            }
        }
    }
    let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    ProperColoring { colors, palette }
}

/// Splits the nodes of `g` into two sides such that every node of degree `d >= Delta / 2`
/// has between `(1/2 - eps) d` and `(1/2 + eps) d` neighbors on each side. Lower-degree
/// nodes are unconstrained, which keeps both induced subgraphs at max degree
/// `(1/2 + eps) Delta` or less.
pub fn uniform_split_graph(g: &SimGraph, eps: f64, c_split: f64) -> Result<(Partition, RoundLedger)> {
    let delta = g.max_degree();
    let inst = graph_to_weaksplit_instance(g)?;
    let constrained: Vec<bool> = (0..g.node_count()).map(|v| delta > 0 && 2 * g.degree(v) >= delta).collect();
    let run = strong_split_partial(&inst, eps, &constrained, c_split)?;
    let sides = run.coloring.values.iter().map(|c| c.unwrap_or(Color::Red)).collect();
    Ok((Partition { sides }, run.ledger))
}

#[derive(Clone, Debug)]
pub struct ColoringRun {
    pub coloring: ProperColoring,
    pub ledger: RoundLedger,
    /// Recursion depth `r` that was executed.
    pub depth: usize,
    /// Max degree of the subgraphs after each level, the input first.
    pub level_max_degrees: Vec<usize>,
    /// `Delta*`, the max degree over the leaf subgraphs.
    pub leaf_max_degree: usize,
    /// `2^r (Delta* + 1)`.
    pub measured_bound: usize,
    /// `(1 + 2 eps)^r Delta + 2^r`, which bounds `measured_bound` because each level
    /// keeps degrees at most `(1/2 + eps)` times the parent's max degree.
    pub formula_bound: f64,
}

/// Recursion depth `max(0, floor(log Delta - log log n))`.
pub fn default_depth(n: usize, delta: usize) -> usize {
    let log_n = log2n(n);
    if delta < 2 || log_n < 2.0 {
        return 0;
    }
    ((delta as f64).log2() - log_n.log2()).floor().max(0.0) as usize
}

/// Colors `g` by splitting it `depth` times into `2^depth` subgraphs of roughly halved
/// degree, then coloring every leaf greedily from its own palette of `Delta* + 1` colors.
/// `depth = None` uses [`default_depth`].
pub fn coloring_via_splitting(g: &SimGraph, eps: f64, depth: Option<usize>) -> Result<ColoringRun> {
    let n = g.node_count();
    let depth = depth.unwrap_or_else(|| default_depth(n, g.max_degree()));
    let mut ledger = RoundLedger::new();
    let mut parts: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut level_max_degrees = vec![g.max_degree()];
    for level in 0..depth {
        let mut next = Vec::with_capacity(2 * parts.len());
        let mut slowest: Option<RoundLedger> = None;
        let mut level_max = 0;
        for part in &parts {
            let mut keep = vec![false; n];
            for &v in part {
                keep[v] = true;
            }
            let (sub, map) = g.induced(&keep);
            let (partition, split) = uniform_split_graph(&sub, eps, DEFAULT_SPLIT_CONSTANT)?;
            let (mut red, mut blue) = (Vec::new(), Vec::new());
            for (i, side) in partition.sides.iter().enumerate() {
                match side {
                    Color::Red => red.push(map[i]),
                    Color::Blue => blue.push(map[i]),
                }
            }
            for half in [&red, &blue] {
                let mut k = vec![false; n];
                for &v in half {
                    k[v] = true;
                }
                level_max = level_max.max(g.induced(&k).0.max_degree());
            }
            next.push(red);
            next.push(blue);
            if slowest.as_ref().is_none_or(|s| split.total_simulated() > s.total_simulated()) {
                slowest = Some(split);
            }
        }
        if let Some(s) = slowest {
            ledger.absorb(&format!("level[{}]", level + 1), s);
        }
        debug!("coloring level {}: {} parts, max degree {level_max}", level + 1, next.len());
        level_max_degrees.push(level_max);
        parts = next;
    }
    let leaves: Vec<(SimGraph, Vec<usize>)> = parts
        .iter()
        .map(|part| {
            let mut keep = vec![false; n];
            for &v in part {
                keep[v] = true;
            }
            g.induced(&keep)
        })
        .collect();
    let leaf_max_degree = leaves.iter().map(|(s, _)| s.max_degree()).max().unwrap_or(0);
    let width = leaf_max_degree + 1;
    let mut colors = vec![0; n];
    let mut waves = 0;
    for (i, (sub, map)) in leaves.iter().enumerate() {
        let pc = greedy_base_coloring(sub);
        for (j, &v) in map.iter().enumerate() {
            colors[v] = i * width + pc.colors[j];
        }
        waves = waves.max(id_order_waves(sub));
    }
    let log_n = log2n(n);
    ledger.charge("base coloring", waves, log_n * log_n, "poly(log n) as log^2 n");
    let measured_bound = (1usize << depth) * width;
    let formula_bound = (1.0 + 2.0 * eps).powi(depth as i32) * g.max_degree() as f64 + (1u64 << depth) as f64;
    let palette = if n == 0 { 0 } else { measured_bound };
    assert!(
        measured_bound as f64 <= formula_bound + 1e-9 * formula_bound,
        "2^r (Delta* + 1) = {measured_bound} exceeds (1 + 2 eps)^r Delta + 2^r = {formula_bound}"
    );
    Ok(ColoringRun {
        coloring: ProperColoring { colors, palette },
        ledger,
        depth,
        level_max_degrees,
        leaf_max_degree,
        measured_bound,
        formula_bound,
    })
}
