use super::MultiColoring;
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::{log2n, BipartiteInstance};
use crate::verify::ceil_slack;
use crate::weak::{check_log_degree, split_with_schedule, TwoColoring};

/// Turns a weak multicolor splitting into a weak splitting.
///
/// Every U-node keeps, for each of its `t = ceil(2 log n)` smallest colors, the
/// lowest-indexed neighbor of that color. In the trimmed instance no U-node has two
/// neighbors of one color, so the multicoloring is a distance-2 coloring of its V-nodes
/// and schedules the conditional-expectation splitter directly: one phase per color.
pub fn weak_multicolor_to_weaksplit(b: &BipartiteInstance, mc: &MultiColoring) -> Result<(TwoColoring, RoundLedger)> {
    if mc.colors.len() != b.right_count() {
        return Err(Error::IncompleteColoring { got: mc.colors.len(), expected: b.right_count() });
    }
    if b.left_count() == 0 {
        return Ok((TwoColoring::all_red(b.right_count()), RoundLedger::new()));
    }
    let t = ceil_slack(2.0 * log2n(b.n()));
    let mut keep: Vec<(usize, usize)> = Vec::with_capacity(b.left_count() * t);
    for u in 0..b.left_count() {
        let mut firsts: Vec<(usize, usize)> = Vec::new();
        for &v in b.left_neighbors(u) {
            firsts.push((mc.colors[v], v));
        }
        // lowest V index per color: sort by (color, v) and keep the first of each color
        firsts.sort_unstable();
        firsts.dedup_by_key(|p| p.0);
        if firsts.len() < t {
            return Err(Error::NotAWeakMulticolorSplitting { node: u, seen: firsts.len(), needed: t });
        }
        keep.extend(firsts[..t].iter().map(|&(_, v)| (u, v)));
    }
    keep.sort_unstable();
    let trimmed = b.retain_edges(|u, v| keep.binary_search(&(u, v)).is_ok());
    check_log_degree(&trimmed)?;
    let out = split_with_schedule(&trimmed, &mc.colors, (2.0 * mc.palette as f64, "2 C"))?;
    let mut coloring = out.coloring;
    coloring.fill_red();
    let mut ledger = RoundLedger::new();
    ledger.charge("select one neighbor per color", 1, 1.0, "1");
    ledger.absorb("multicolor schedule", out.ledger);
    Ok((coloring, ledger))
}
