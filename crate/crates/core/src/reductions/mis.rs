use log::debug;
use serde::{Deserialize, Serialize};

use super::coloring::{id_order, id_order_waves};
use super::{split_window, strong_split_partial, IndependentSet, DEFAULT_SPLIT_CONSTANT};
use crate::engine::{log_star, RoundLedger};
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance, SimGraph};
use crate::weak::Color;

/// Greedy MIS in ascending ID order. Any MIS has at least `n / (Delta + 1)` nodes, and
/// this is asserted.
pub fn greedy_mis(g: &SimGraph) -> IndependentSet {
    let mut member = vec![false; g.node_count()];
    for v in id_order(g) {
        if !g.neighbors(v).iter().any(|&u| member[u]) {
            member[v] = true;
        }
    }
    let members: Vec<usize> = (0..g.node_count()).filter(|&v| member[v]).collect();
    assert!(
        members.len() * (g.max_degree() + 1) >= g.node_count(),
        "maximal independent set smaller than n / (Delta + 1)"
    );
    IndependentSet { members }
}

/// One round of heavy node elimination.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeavyIteration {
    /// Max degree `Delta` of the current halving step.
    pub max_degree: usize,
    pub heavy: usize,
    /// Heavy nodes in the new independent set or adjacent to it.
    pub covered: usize,
    /// Active nodes left when the splitting stopped.
    pub active: usize,
    pub splits: usize,
    /// Max number of active neighbors of an active node at the end.
    pub max_active_degree: usize,
}

impl HeavyIteration {
    pub fn covered_fraction(&self) -> f64 {
        if self.heavy == 0 {
            1.0
        } else {
            self.covered as f64 / self.heavy as f64
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MisStats {
    pub steps: usize,
    pub iterations: Vec<HeavyIteration>,
    /// `(nodes, max degree, size)` of every greedy MIS call.
    pub greedy_calls: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct MisRun {
    pub set: IndependentSet,
    pub ledger: RoundLedger,
    pub stats: MisStats,
}

pub fn mis_via_splitting(g: &SimGraph, eps: f64) -> Result<(IndependentSet, RoundLedger)> {
    let run = mis_via_splitting_traced(g, eps)?;
    Ok((run.set, run.ledger))
}

/// Probability that a fair coloring of `d` neighbors leaves the split window.
fn failure_probability(d: usize, eps: f64) -> f64 {
    let Some((lo, hi)) = split_window(d, eps) else {
        return 1.0;
    };
    let mut p = 0.5f64.powi(d as i32);
    let mut inside = 0.0;
    for k in 0..=d {
        if k >= lo && k <= hi {
            inside += p;
        }
        p = p * (d - k) as f64 / (k + 1) as f64;
    }
    (1.0 - inside).max(0.0)
}

/// Working state of a run: the residual graph is the set of alive nodes.
struct Residual<'a> {
    g: &'a SimGraph,
    alive: Vec<bool>,
    degree: Vec<usize>,
}

impl Residual<'_> {
    fn max_degree(&self) -> usize {
        (0..self.g.node_count()).filter(|&v| self.alive[v]).map(|v| self.degree[v]).max().unwrap_or(0)
    }

    fn remove(&mut self, v: usize) {
        if !self.alive[v] {
            return;
        }
        self.alive[v] = false;
        for &u in self.g.neighbors(v) {
            if self.alive[u] {
                self.degree[u] -= 1;
            }
        }
    }
}

/// MIS by repeated heavy node elimination.
///
/// Each step fixes the current max degree `Delta` and repeats until no node of degree
/// `>= Delta / 2` is left: take the heavy nodes and their neighbors, mark them active,
/// and strong-split the active nodes against their active neighbors. Nodes colored blue
/// turn passive, then nodes with fewer than `log n` red neighbors. Splitting stops once
/// every active node has fewer than `4 log n` active neighbors (at most `2 log Delta`
/// splits). A greedy MIS of the active nodes joins the output and is removed together
/// with its neighbors. Once `Delta <= 4 log n` the rest is solved greedily.
pub fn mis_via_splitting_traced(g: &SimGraph, eps: f64) -> Result<MisRun> {
    let n = g.node_count();
    let log_n = log2n(n);
    let base_degree = (4.0 * log_n).ceil() as usize;
    let budget = (log_n.powi(4).ceil() as usize).max(1);
    let mut res = Residual { g, alive: vec![true; n], degree: (0..n).map(|v| g.degree(v)).collect() };
    let mut members = Vec::new();
    let mut stats = MisStats::default();
    let mut ledger = RoundLedger::new();
    loop {
        let delta = res.max_degree();
        if delta <= base_degree {
            break;
        }
        stats.steps += 1;
        let (mut simulated, mut nominal) = (0u64, 0.0);
        let mut count = 0;
        loop {
            let heavy: Vec<usize> = (0..n).filter(|&v| res.alive[v] && 2 * res.degree[v] >= delta).collect();
            if heavy.is_empty() {
                break;
            }
            count += 1;
            if count > budget {
                return Err(Error::IterationBudgetExceeded(budget));
            }
            let mut active = vec![false; n];
            for &h in &heavy {
                active[h] = true;
                for &u in g.neighbors(h) {
                    active[u] |= res.alive[u];
                }
            }
            let cap = (2.0 * (delta as f64).log2()).ceil() as usize;
            let mut splits = 0;
            let max_active_degree = loop {
                let degs = active_degrees(g, &active);
                let max_ad = (0..n).filter(|&v| active[v]).map(|v| degs[v]).max().unwrap_or(0);
                if (max_ad as f64) < 4.0 * log_n || splits >= cap {
                    break max_ad;
                }
                let (colors, split) = split_active(g, &active, &degs, eps, log_n)?;
                splits += 1;
                simulated += split.total_simulated();
                nominal += split.total_nominal();
                let mut next = active.clone();
                for v in 0..n {
                    if active[v] && colors[v] == Some(Color::Blue) {
                        next[v] = false;
                    }
                }
                let red = active_degrees(g, &next);
                for v in 0..n {
                    if next[v] && (red[v] as f64) < log_n {
                        next[v] = false;
                    }
                }
                if !next.iter().any(|&a| a) {
                    break max_ad;
                }
                active = next;
            };
            let (star, map) = g.induced(&active);
            let found = greedy_mis(&star);
            stats.greedy_calls.push((star.node_count(), star.max_degree(), found.len()));
            simulated += id_order_waves(&star);
            nominal += star.max_degree() as f64 + log_star(n) as f64;
            let chosen: Vec<usize> = found.members.iter().map(|&i| map[i]).collect();
            let mut covered_mark = vec![false; n];
            for &v in &chosen {
                covered_mark[v] = true;
                for &u in g.neighbors(v) {
                    covered_mark[u] |= res.alive[u];
                }
            }
            let covered = heavy.iter().filter(|&&h| covered_mark[h]).count();
            for v in (0..n).filter(|&v| covered_mark[v]) {
                res.remove(v);
            }
            members.extend(chosen);
            stats.iterations.push(HeavyIteration {
                max_degree: delta,
                heavy: heavy.len(),
                covered,
                active: star.node_count(),
                splits,
                max_active_degree,
            });
        }
        debug!("MIS step {}: Delta {delta}, {count} heavy eliminations", stats.steps);
        ledger.charge(&format!("step[{}]", stats.steps), simulated, nominal, "splits + greedy MIS on G*");
    }
    let (rest, map) = g.induced(&res.alive);
    let found = greedy_mis(&rest);
    stats.greedy_calls.push((rest.node_count(), rest.max_degree(), found.len()));
    ledger.charge("base MIS", id_order_waves(&rest), rest.max_degree() as f64 + log_star(n) as f64, "Delta + log* n");
    members.extend(found.members.iter().map(|&i| map[i]));
    members.sort_unstable();
    Ok(MisRun { set: IndependentSet { members }, ledger, stats })
}

fn active_degrees(g: &SimGraph, active: &[bool]) -> Vec<usize> {
    (0..g.node_count())
        .map(|v| if active[v] { g.neighbors(v).iter().filter(|&&u| active[u]).count() } else { 0 })
        .collect()
}

/// Strong split of the active nodes against their active neighbors. Only nodes with at
/// least `4 log n` active neighbors that meet the degree requirement are constrained,
/// taken in order of increasing failure probability while the total stays below 1.
fn split_active(
    g: &SimGraph,
    active: &[bool],
    degs: &[usize],
    eps: f64,
    log_n: f64,
) -> Result<(Vec<Option<Color>>, RoundLedger)> {
    let n = g.node_count();
    let nodes: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in nodes.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in nodes.iter().enumerate() {
        edges.extend(g.neighbors(v).iter().filter(|&&u| active[u]).map(|&u| (i, index[u])));
    }
    let inst = BipartiteInstance::new(nodes.len(), nodes.len(), edges)?;
    let required = DEFAULT_SPLIT_CONSTANT * (inst.n().max(2) as f64).ln() / (eps * eps);
    let mut candidates: Vec<(f64, usize)> = nodes
        .iter()
        .enumerate()
        .filter(|&(_, &v)| degs[v] as f64 >= (4.0 * log_n).max(required))
        .map(|(i, &v)| (failure_probability(degs[v], eps), i))
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut constrained = vec![false; nodes.len()];
    let mut sum = 0.0;
    for (p, i) in candidates {
        if sum + p >= 0.99 {
            break;
        }
        sum += p;
        constrained[i] = true;
    }
    let run = strong_split_partial(&inst, eps, &constrained, DEFAULT_SPLIT_CONSTANT)?;
    let mut colors = vec![None; n];
    for (i, &v) in nodes.iter().enumerate() {
        colors[v] = run.coloring.values[i];
    }
    Ok((colors, run.ledger))
}
