use super::{EdgeOrientation, SplitMode};
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{log2n, SimGraph};

/// Nominal cost of one degree splitting with parameter `eps` on `n` nodes.
/// Log factors are floored at 1 so that tiny arguments do not zero the charge.
pub fn nominal_degree_split(eps: f64, n: usize, mode: SplitMode) -> (f64, &'static str) {
    let inv = 1.0 / eps;
    let l = inv.log2().max(1.0);
    match mode {
        SplitMode::Deterministic => (inv * l.powf(1.1) * log2n(n).max(1.0), "eps^-1 * log(1/eps)^1.1 * log n"),
        SplitMode::Randomized => (
            inv * l * l.log2().max(1.0).powf(1.71) * log2n(n).max(2.0).log2().max(1.0),
            "eps^-1 * log(1/eps) * loglog(1/eps)^1.71 * loglog n",
        ),
    }
}

pub fn directed_degree_split(g: &SimGraph, eps: f64) -> Result<(EdgeOrientation, RoundLedger)> {
    directed_degree_split_with(g, eps, SplitMode::Deterministic)
}

/// Orients every edge so that each node's in- and out-degree differ by at most 1.
///
/// Odd-degree nodes are joined to an extra node, the augmented multigraph is split
/// into closed trails (iterative Hierholzer walk), every edge is oriented along its
/// trail, and the extra edges are dropped. This meets any discrepancy target
/// `eps * deg + 2`. It runs centrally, so the simulated round count is 0 and only the
/// nominal charge is booked.
pub fn directed_degree_split_with(g: &SimGraph, eps: f64, mode: SplitMode) -> Result<(EdgeOrientation, RoundLedger)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::ParamViolation(format!("eps = {eps} outside (0, 1]")));
    }
    let n = g.node_count();
    let m = g.edge_count();
    let dummy = n;
    let mut ends: Vec<(usize, usize)> = g.edges().to_vec();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (e, &(a, b)) in ends.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    for v in 0..n {
        if incident[v].len() % 2 == 1 {
            let e = ends.len();
            ends.push((v, dummy));
            incident[v].push(e);
            incident[dummy].push(e);
        }
    }
    let mut used = vec![false; ends.len()];
    let mut cursor = vec![0usize; n + 1];
    let mut arcs = vec![(0, 0); m];
    let mut stack = Vec::new();
    for start in 0..=n {
        stack.push(start);
        while let Some(&x) = stack.last() {
            let list = &incident[x];
            while cursor[x] < list.len() && used[list[cursor[x]]] {
                cursor[x] += 1;
            }
            if cursor[x] == list.len() {
                stack.pop();
                continue;
            }
            let e = list[cursor[x]];
            used[e] = true;
            let (a, b) = ends[e];
            let y = if a == x { b } else { a };
            if e < m {
                arcs[e] = (x, y);
            }
            stack.push(y);
        }
    }
    let mut ledger = RoundLedger::new();
    let (nominal, formula) = nominal_degree_split(eps, n, mode);
    ledger.charge("degree-split", 0, nominal, formula);
    Ok((EdgeOrientation { arcs }, ledger))
}
