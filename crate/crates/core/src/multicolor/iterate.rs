use std::collections::BTreeMap;

use log::debug;

use super::{multicolor_split_base, MultiColoring, MulticolorParams};
use crate::engine::rng::substream;
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance};
use crate::verify::ceil_slack;

#[derive(Clone, Debug)]
pub struct IterateOutcome {
    pub coloring: MultiColoring,
    /// Load factor reached: `max(lambda^i, 1 / (2 log n))`.
    pub lambda: f64,
    pub iterations: usize,
    /// Virtual U-nodes kept in each iteration.
    pub virtual_nodes: Vec<usize>,
    pub ledger: RoundLedger,
}

/// Iterated multicolor splitting with the random base splitter.
pub fn multicolor_split_iterate(b: &BipartiteInstance, params: &MulticolorParams, seed: u64) -> Result<IterateOutcome> {
    let mut base = |h: &BipartiteInstance, colors: usize, lambda: f64, s: u64| {
        multicolor_split_base(h, colors, lambda, s, params).map(|(mc, ledger, _)| (mc, ledger))
    };
    multicolor_split_iterate_with(b, params, seed, &mut base)
}

/// Splits a sub-instance into `C'` colors: `(instance, C', lambda, seed)`.
pub type SubSolver<'a> = dyn FnMut(&BipartiteInstance, usize, f64, u64) -> Result<(MultiColoring, RoundLedger)> + 'a;

/// Refines a multicoloring `i = ceil(log_{1/lambda}(2 log n))` times.
///
/// In every iteration each U-node gets one virtual node per color among its neighbors,
/// adjacent to exactly its neighbors of that color. Virtual nodes of degree below
/// `(alpha / lambda) ln n_j` are dropped (`n_j` counts the V-nodes and all candidate
/// virtual nodes). The solver splits the rest, and a node's new color is
/// `old * C_j + sub`. Returns a `(C_1 * ... * C_i, max(lambda^i, 1 / (2 log n)))`
/// multicolor splitting.
pub fn multicolor_split_iterate_with(
    b: &BipartiteInstance,
    params: &MulticolorParams,
    seed: u64,
    solver: &mut SubSolver,
) -> Result<IterateOutcome> {
    let (c, lambda) = (params.colors, params.lambda);
    if !(lambda > 0.0 && lambda < 1.0) || c < 2 {
        return Err(Error::ParamViolation(format!("need C >= 2 and 0 < lambda < 1, got {c}, {lambda}")));
    }
    let n = b.n();
    let log_n = log2n(n);
    let ln_n = (n as f64).ln();
    let required = params.beta * ln_n * ln_n;
    for u in 0..b.left_count() {
        if (b.left_degree(u) as f64) < required {
            return Err(Error::PreconditionDegree { node: u, degree: b.left_degree(u), required });
        }
    }
    let target = 1.0 / (2.0 * log_n);
    let iterations = ceil_slack((2.0 * log_n).ln() / (1.0 / lambda).ln()).max(1);
    // C^i <= C (2 log n)^(1/eps) for the largest eps with lambda <= C^-eps
    let eps = (1.0 / lambda).ln() / (c as f64).ln();
    let palette_bound = (c as f64).powi(iterations as i32);
    if palette_bound > c as f64 * (2.0 * log_n).powf(1.0 / eps) * (1.0 + 1e-9) {
        return Err(Error::ParamViolation(format!("palette bound {palette_bound} exceeds C (2 log n)^(1/eps)")));
    }
    if palette_bound > params.palette_cap as f64 {
        return Err(Error::ParamViolation(format!(
            "palette C^i = {palette_bound} exceeds the cap {}",
            params.palette_cap
        )));
    }
    let right = b.right_count();
    let mut colors = vec![0usize; right];
    let mut palette = 1usize;
    let mut ledger = RoundLedger::new();
    let mut virtual_nodes = Vec::with_capacity(iterations);
    for j in 1..=iterations {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..b.left_count() {
            by_color.clear();
            for &v in b.left_neighbors(u) {
                by_color.entry(colors[v]).or_default().push(v);
            }
            groups.extend(std::mem::take(&mut by_color).into_values());
        }
        let n_j = right + groups.len();
        let threshold = params.alpha / lambda * (n_j as f64).ln();
        let kept: Vec<&Vec<usize>> = groups.iter().filter(|g| g.len() as f64 >= threshold).collect();
        debug!("iteration {j}: {} of {} virtual nodes kept (threshold {threshold:.1})", kept.len(), groups.len());
        virtual_nodes.push(kept.len());
        if kept.is_empty() {
            break;
        }
        let edges = kept.iter().enumerate().flat_map(|(i, g)| g.iter().map(move |&v| (i, v))).collect();
        let h = BipartiteInstance::new(kept.len(), right, edges)?;
        let (sub, sub_ledger) = solver(&h, c, lambda, substream(seed, j as u64))?;
        if sub.palette > c || sub.colors.iter().any(|&x| x >= sub.palette) {
            return Err(Error::ParamViolation(format!("solver palette {} exceeds C = {c}", sub.palette)));
        }
        for (x, &s) in colors.iter_mut().zip(&sub.colors) {
            *x = *x * sub.palette + s;
        }
        palette *= sub.palette;
        ledger.absorb(&format!("iteration[{j}]"), sub_ledger);
    }
    let final_lambda = lambda.powi(iterations as i32).max(target);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for u in 0..b.left_count() {
        counts.clear();
        for &v in b.left_neighbors(u) {
            *counts.entry(colors[v]).or_default() += 1;
        }
        let limit = ceil_slack(final_lambda * b.left_degree(u) as f64);
        if let Some((&color, &count)) = counts.iter().find(|(_, &k)| k > limit) {
            return Err(Error::ParamViolation(format!(
                "U-node {u} keeps {count} neighbors of color {color}, above {limit}; raise beta or lower alpha"
            )));
        }
    }
    Ok(IterateOutcome {
        coloring: MultiColoring { colors, palette },
        lambda: final_lambda,
        iterations,
        virtual_nodes,
        ledger,
    })
}
