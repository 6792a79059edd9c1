//! Independent checkers. Each returns every violation it finds, not just the first,
//! and none of them reuses solver code.

use serde::{Deserialize, Serialize};

use crate::degree::EdgeOrientation;
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance, SimGraph};
use crate::multicolor::MultiColoring;
use crate::reductions::ProperColoring;
use crate::weak::{Color, TwoColoring};

/// Slack for comparisons against real-valued bounds such as `ceil(lambda * d)`, so that
/// `0.3 * 10` counts as 3.
const SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict<V> {
    pub violations: Vec<V>,
}

impl<V> Verdict<V> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn verdict<V>(violations: Vec<V>) -> Verdict<V> {
    Verdict { violations }
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::IncompleteColoring { got, expected })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakViolation {
    pub u: usize,
    pub has_red: bool,
    pub has_blue: bool,
}

/// Every U-node needs a red and a blue neighbor.
pub fn check_weak_splitting(b: &BipartiteInstance, coloring: &TwoColoring) -> Result<Verdict<WeakViolation>> {
    check_len(coloring.values.len(), b.right_count())?;
    let mut out = Vec::new();
    for u in 0..b.left_count() {
        let mut has_red = false;
        let mut has_blue = false;
        for &v in b.left_neighbors(u) {
            match coloring.values[v] {
                Some(Color::Red) => has_red = true,
                Some(Color::Blue) => has_blue = true,
                None => {}
            }
        }
        if !(has_red && has_blue) {
            out.push(WeakViolation { u, has_red, has_blue });
        }
    }
    Ok(verdict(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MulticolorViolation {
    OutOfPalette { v: usize, color: usize },
    Overloaded { u: usize, color: usize, count: usize, limit: usize },
}

/// `ceil(x)` with a small slack for floating-point products.
pub fn ceil_slack(x: f64) -> usize {
    (x - SLACK).ceil().max(0.0) as usize
}

/// `(C, lambda)`-multicolor splitting: colors in `0..C`, and no U-node has more than
/// `ceil(lambda * deg)` neighbors of one color. Only U-nodes of degree at least
/// `min_degree` are checked.
pub fn check_multicolor_splitting(
    b: &BipartiteInstance,
    mc: &MultiColoring,
    colors: usize,
    lambda: f64,
    min_degree: usize,
) -> Result<Verdict<MulticolorViolation>> {
    check_len(mc.colors.len(), b.right_count())?;
    let mut out = Vec::new();
    for (v, &color) in mc.colors.iter().enumerate() {
        if color >= colors {
            out.push(MulticolorViolation::OutOfPalette { v, color });
        }
    }
    let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
    for u in 0..b.left_count() {
        let d = b.left_degree(u);
        if d < min_degree {
            continue;
        }
        counts.clear();
        for &v in b.left_neighbors(u) {
            *counts.entry(mc.colors[v]).or_default() += 1;
        }
        let limit = ceil_slack(lambda * d as f64);
        for (&color, &count) in &counts {
            if count > limit {
                out.push(MulticolorViolation::Overloaded { u, color, count, limit });
            }
        }
    }
    Ok(verdict(out))
}

/// Degree above which a U-node must see many colors: `2 (log n + 1) ln n`.
pub fn weak_multicolor_degree_threshold(n: usize) -> f64 {
    2.0 * (log2n(n) + 1.0) * (n as f64).ln()
}

/// Degree threshold `(2 log n + 1) ln^c n` used when weak multicolor splittings are
/// produced by iterated multicolor splitting.
pub fn weak_multicolor_degree_threshold_pow(n: usize, c: f64) -> f64 {
    (2.0 * log2n(n) + 1.0) * (n as f64).ln().powf(c)
}

/// Number of distinct colors a qualifying U-node must see: `2 log n`.
pub fn weak_multicolor_color_threshold(n: usize) -> f64 {
    2.0 * log2n(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakMulticolorViolation {
    pub u: usize,
    pub distinct: usize,
    pub required: f64,
}

/// Every U-node of degree at least `degree_threshold` sees at least `color_threshold`
/// distinct colors.
pub fn check_weak_multicolor(
    b: &BipartiteInstance,
    mc: &MultiColoring,
    degree_threshold: f64,
    color_threshold: f64,
) -> Result<Verdict<WeakMulticolorViolation>> {
    check_len(mc.colors.len(), b.right_count())?;
    let mut out = Vec::new();
    for u in 0..b.left_count() {
        if (b.left_degree(u) as f64) + SLACK < degree_threshold {
            continue;
        }
        let mut seen: Vec<usize> = b.left_neighbors(u).iter().map(|&v| mc.colors[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        if (seen.len() as f64) + SLACK < color_threshold {
            out.push(WeakMulticolorViolation { u, distinct: seen.len(), required: color_threshold });
        }
    }
    Ok(verdict(out))
}

fn arcs_match(g: &SimGraph, o: &EdgeOrientation) -> Result<Vec<usize>> {
    if o.arcs.len() != g.edge_count() {
        return Err(Error::IncompleteColoring { got: o.arcs.len(), expected: g.edge_count() });
    }
    Ok(g.edges()
        .iter()
        .zip(&o.arcs)
        .enumerate()
        .filter(|(_, (&(a, b), &(t, h)))| !((t, h) == (a, b) || (t, h) == (b, a)))
        .map(|(e, _)| e)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    /// `|outdeg - indeg|` per node.
    pub per_node: Vec<usize>,
    pub max: usize,
    /// Edges whose arc does not join the edge's endpoints.
    pub mismatched: Vec<usize>,
}

pub fn check_orientation_discrepancy(g: &SimGraph, o: &EdgeOrientation) -> Result<DiscrepancyReport> {
    let mismatched = arcs_match(g, o)?;
    let mut out_deg = vec![0i64; g.node_count()];
    let mut in_deg = vec![0i64; g.node_count()];
    for &(t, h) in &o.arcs {
        out_deg[t] += 1;
        in_deg[h] += 1;
    }
    let per_node: Vec<usize> = out_deg.iter().zip(&in_deg).map(|(a, b)| (a - b).unsigned_abs() as usize).collect();
    let max = per_node.iter().copied().max().unwrap_or(0);
    Ok(DiscrepancyReport { per_node, max, mismatched })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SinklessViolation {
    Sink(usize),
    BadArc(usize),
}

/// Every node of positive degree has an outgoing edge.
pub fn check_sinkless(g: &SimGraph, o: &EdgeOrientation) -> Result<Verdict<SinklessViolation>> {
    let mut out: Vec<SinklessViolation> = arcs_match(g, o)?.into_iter().map(SinklessViolation::BadArc).collect();
    let mut has_out = vec![false; g.node_count()];
    for &(t, _) in &o.arcs {
        has_out[t] = true;
    }
    out.extend((0..g.node_count()).filter(|&v| g.degree(v) > 0 && !has_out[v]).map(SinklessViolation::Sink));
    Ok(verdict(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringViolation {
    Conflict { a: usize, b: usize },
    OutOfPalette { v: usize, color: usize },
}

pub fn check_proper_coloring(g: &SimGraph, pc: &ProperColoring) -> Result<Verdict<ColoringViolation>> {
    check_len(pc.colors.len(), g.node_count())?;
    let mut out = Vec::new();
    for (v, &color) in pc.colors.iter().enumerate() {
        if color >= pc.palette {
            out.push(ColoringViolation::OutOfPalette { v, color });
        }
    }
    for &(a, b) in g.edges() {
        if pc.colors[a] == pc.colors[b] {
            out.push(ColoringViolation::Conflict { a, b });
        }
    }
    Ok(verdict(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MisViolation {
    InvalidNode(usize),
    Adjacent { a: usize, b: usize },
    Uncovered(usize),
}

/// Independence and maximality of `set` (node indices, duplicates ignored).
pub fn check_mis(g: &SimGraph, set: &[usize]) -> Verdict<MisViolation> {
    let mut out = Vec::new();
    let mut member = vec![false; g.node_count()];
    for &v in set {
        if v < g.node_count() {
            member[v] = true;
        } else {
            out.push(MisViolation::InvalidNode(v));
        }
    }
    for &(a, b) in g.edges() {
        if member[a] && member[b] {
            out.push(MisViolation::Adjacent { a, b });
        }
    }
    for v in 0..g.node_count() {
        if !member[v] && !g.neighbors(v).iter().any(|&w| member[w]) {
            out.push(MisViolation::Uncovered(v));
        }
    }
    verdict(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformViolation {
    pub u: usize,
    pub red: usize,
    pub blue: usize,
    pub low: f64,
    pub high: f64,
}

/// Every checked U-node of degree `d` has between `(1/2 - eps) d` and `(1/2 + eps) d`
/// red neighbors and as many blue ones. Uncolored neighbors count for neither side.
/// With `constrained = None` all U-nodes are checked.
pub fn check_uniform_split(
    b: &BipartiteInstance,
    coloring: &TwoColoring,
    eps: f64,
    constrained: Option<&[bool]>,
) -> Result<Verdict<UniformViolation>> {
    check_len(coloring.values.len(), b.right_count())?;
    let mut out = Vec::new();
    for u in 0..b.left_count() {
        if constrained.is_some_and(|c| !c[u]) {
            continue;
        }
        let d = b.left_degree(u) as f64;
        let (low, high) = ((0.5 - eps) * d, (0.5 + eps) * d);
        let red = b.left_neighbors(u).iter().filter(|&&v| coloring.values[v] == Some(Color::Red)).count();
        let blue = b.left_neighbors(u).iter().filter(|&&v| coloring.values[v] == Some(Color::Blue)).count();
        let inside = |x: usize| x as f64 + SLACK >= low && x as f64 - SLACK <= high;
        if !(inside(red) && inside(blue)) {
            out.push(UniformViolation { u, red, blue, low, high });
        }
    }
    Ok(verdict(out))
}
