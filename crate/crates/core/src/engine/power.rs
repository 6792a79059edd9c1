use super::rng::splitmix64;
use super::BallExplorer;
use crate::error::{Error, Result};
use crate::graph::SimGraph;

/// A proper coloring of `G^k` together with what it cost.
#[derive(Clone, Debug)]
pub struct PowerColoring {
    pub colors: Vec<usize>,
    pub palette: usize,
    /// Length of the longest priority-decreasing chain; each wave costs `k` rounds.
    pub waves: usize,
    pub max_power_degree: usize,
    pub rounds: u64,
    pub nominal: f64,
}

impl PowerColoring {
    /// Every node scheduled by its color.
    pub fn schedule(&self) -> Vec<Option<usize>> {
        self.colors.iter().map(|&c| Some(c)).collect()
    }
}

/// Iterated logarithm (base 2).
pub fn log_star(n: usize) -> u32 {
    let mut x = n as f64;
    let mut k = 0;
    while x > 1.0 {
        x = x.log2();
        k += 1;
    }
    k
}

/// Greedy coloring of `G^k` for `k` in {2, 4}.
///
/// Nodes carry a pseudo-random priority derived from their ID. A node picks the
/// smallest color unused by higher-priority nodes within distance `k`, which is what a
/// LOCAL run produces when every node waits for its higher-priority `k`-neighbors. The
/// number of waves is the longest chain of such waits.
pub fn power_graph_coloring(g: &SimGraph, k: usize) -> Result<PowerColoring> {
    if k != 2 && k != 4 {
        return Err(Error::UnsupportedRadius(k));
    }
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(splitmix64(g.id(v))), v));
    let mut colors = vec![usize::MAX; n];
    let mut wave = vec![0usize; n];
    let mut explorer = BallExplorer::new(n);
    let mut forbidden: Vec<usize> = Vec::new();
    let mut max_power_degree = 0;
    let mut waves = 0;
    for (step, &v) in order.iter().enumerate() {
        let ball = explorer.explore(g, v, k);
        max_power_degree = max_power_degree.max(ball.len() - 1);
        let mut w = 0;
        for &x in &ball[1..] {
            if colors[x] != usize::MAX {
                w = w.max(wave[x]);
                let c = colors[x];
                if c >= forbidden.len() {
                    forbidden.resize(c + 1, usize::MAX);
                }
                forbidden[c] = step;
            }
        }
        let c = (0..).find(|&c| forbidden.get(c) != Some(&step)).expect("unbounded search");
        colors[v] = c;
        wave[v] = w + 1;
        waves = waves.max(w + 1);
    }
    let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    Ok(PowerColoring {
        colors,
        palette,
        waves,
        max_power_degree,
        rounds: (waves * k) as u64,
        nominal: max_power_degree as f64 + log_star(n) as f64,
    })
}
