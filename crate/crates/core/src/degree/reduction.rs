use log::debug;

use super::{directed_degree_split_with, SplitMode};
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{BipartiteInstance, SimGraph};

/// Repeatedly orients `B` with discrepancy at most 1 and deletes every edge pointing
/// from V to U. After each iteration the shrinkage bounds
/// `delta_j > ((1 - eps) / 2)^j * delta - 2` and `r_j < ((1 + eps) / 2)^j * r + 3`
/// are checked.
pub fn degree_rank_reduction_one(
    b: &BipartiteInstance,
    eps: f64,
    iterations: usize,
    mode: SplitMode,
) -> Result<(BipartiteInstance, RoundLedger)> {
    let run = degree_rank_reduction_one_traced(b, eps, iterations, mode)?;
    Ok((run.instance, run.ledger))
}

/// Result of a degree-rank reduction with the `(delta_j, r_j)` trace, input first.
#[derive(Clone, Debug)]
pub struct ReductionRun {
    pub instance: BipartiteInstance,
    pub ledger: RoundLedger,
    pub trace: Vec<(usize, usize)>,
}

pub fn degree_rank_reduction_one_traced(
    b: &BipartiteInstance,
    eps: f64,
    iterations: usize,
    mode: SplitMode,
) -> Result<ReductionRun> {
    let (delta, rank) = (b.min_left_degree() as f64, b.rank() as f64);
    let mut cur = b.clone();
    let mut ledger = RoundLedger::new();
    let mut trace = vec![(b.min_left_degree(), b.rank())];
    for j in 1..=iterations {
        let flat = cur.to_sim_graph();
        let (orientation, split) = directed_degree_split_with(&flat, eps, mode)?;
        ledger.absorb(&format!("reduce-one[{j}]"), split);
        let left = cur.left_count();
        let mut keep = vec![false; flat.edge_count()];
        for (e, &(tail, _)) in orientation.arcs.iter().enumerate() {
            keep[e] = tail < left;
        }
        // flat edges are listed in the same order as the bipartite edges
        let mut idx = 0;
        cur = cur.retain_edges(|_, _| {
            idx += 1;
            keep[idx - 1]
        });
        trace.push((cur.min_left_degree(), cur.rank()));
        let (dj, rj) = (cur.min_left_degree() as f64, cur.rank() as f64);
        debug!("reduction one, iteration {j}: delta {dj}, rank {rj}");
        if cur.left_count() > 0 {
            let low = ((1.0 - eps) / 2.0).powi(j as i32) * delta - 2.0;
            if dj <= low {
                return Err(Error::ShrinkageViolation { iteration: j, detail: format!("min degree {dj} <= {low:.3}") });
            }
        }
        let high = ((1.0 + eps) / 2.0).powi(j as i32) * rank + 3.0;
        if rj >= high {
            return Err(Error::ShrinkageViolation { iteration: j, detail: format!("rank {rj} >= {high:.3}") });
        }
    }
    Ok(ReductionRun { instance: cur, ledger, trace })
}

/// Multigraph on the U-nodes: every V-node pairs up its neighbors in ascending order
/// as (1st, 2nd), (3rd, 4th), ... and each pair becomes an edge labelled with that V-node.
/// An odd neighbor out stays unpaired.
#[derive(Clone, Debug)]
pub struct PairingMultigraph {
    pub graph: SimGraph,
    pub labels: Vec<usize>,
}

pub fn build_pairing_multigraph(b: &BipartiteInstance) -> PairingMultigraph {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for v in 0..b.right_count() {
        for pair in b.right_neighbors(v).chunks_exact(2) {
            edges.push((pair[0], pair[1]));
            labels.push(v);
        }
    }
    let graph = SimGraph::multigraph(b.left_count(), edges).expect("indices come from B");
    PairingMultigraph { graph, labels }
}

/// Each iteration pairs up the neighbors of every V-node, orients the pairing
/// multigraph, and for an edge `u -> w` labelled `v` deletes `{w, v}`. Every V-degree
/// `d` becomes exactly `ceil(d / 2)`. The pairing is rebuilt from scratch each time.
pub fn degree_rank_reduction_two(
    b: &BipartiteInstance,
    eps: f64,
    iterations: usize,
    mode: SplitMode,
) -> Result<(BipartiteInstance, RoundLedger)> {
    let run = degree_rank_reduction_two_traced(b, eps, iterations, mode)?;
    Ok((run.instance, run.ledger))
}

pub fn degree_rank_reduction_two_traced(
    b: &BipartiteInstance,
    eps: f64,
    iterations: usize,
    mode: SplitMode,
) -> Result<ReductionRun> {
    let mut cur = b.clone();
    let mut ledger = RoundLedger::new();
    let mut trace = vec![(b.min_left_degree(), b.rank())];
    for j in 1..=iterations {
        let pairing = build_pairing_multigraph(&cur);
        let (orientation, split) = directed_degree_split_with(&pairing.graph, eps, mode)?;
        ledger.absorb(&format!("reduce-two[{j}]"), split);
        let mut doomed: Vec<(usize, usize)> =
            orientation.arcs.iter().zip(&pairing.labels).map(|(&(_, head), &v)| (head, v)).collect();
        doomed.sort_unstable();
        cur = cur.retain_edges(|u, v| doomed.binary_search(&(u, v)).is_err());
        debug!("reduction two, iteration {j}: delta {}, rank {}", cur.min_left_degree(), cur.rank());
        trace.push((cur.min_left_degree(), cur.rank()));
    }
    Ok(ReductionRun { instance: cur, ledger, trace })
}
