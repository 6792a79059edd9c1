use rand::Rng;

use super::{Color, TwoColoring};
use crate::engine::rng::node_rng;
use crate::engine::{power_graph_coloring, slocal_to_local, RoundLedger, SlocalProgram, View};
use crate::error::Result;
use crate::graph::{connected_components, BipartiteInstance, Component};

/// Partial coloring left by a shattering step and the residual instance `H`: the
/// unsatisfied U-nodes together with the uncolored V-nodes.
#[derive(Clone, Debug)]
pub struct ShatterOutcome {
    pub coloring: TwoColoring,
    pub satisfied: Vec<bool>,
    pub residual_left: Vec<bool>,
    pub residual_right: Vec<bool>,
    pub ledger: RoundLedger,
}

impl ShatterOutcome {
    pub fn unsatisfied_count(&self) -> usize {
        self.satisfied.iter().filter(|&&s| !s).count()
    }

    /// Components of `H` that contain at least one U-node.
    pub fn components(&self, b: &BipartiteInstance) -> Vec<Component> {
        connected_components(b, &self.residual_left, &self.residual_right)
            .into_iter()
            .filter(|c| c.instance.left_count() > 0)
            .collect()
    }

    /// Minimum U-degree inside `H`, if `H` has U-nodes.
    pub fn residual_min_degree(&self, b: &BipartiteInstance) -> Option<usize> {
        (0..b.left_count())
            .filter(|&u| self.residual_left[u])
            .map(|u| b.left_neighbors(u).iter().filter(|&&v| self.residual_right[v]).count())
            .min()
    }
}

/// `delta_H >= 6 r_H` for one residual component.
pub fn residual_gap(h: &BipartiteInstance) -> bool {
    h.min_left_degree() >= 6 * h.rank()
}

/// Two-round shattering: every V-node turns red or blue with probability 1/4 each and
/// stays uncolored otherwise; then every U-node with more than 3/4 of its neighbors
/// colored uncolors all of them.
pub fn shatter(b: &BipartiteInstance, seed: u64) -> ShatterOutcome {
    let tentative = (0..b.right_count())
        .map(|v| {
            let x: f64 = node_rng(seed, v as u64, 0).gen();
            if x < 0.25 {
                Some(Color::Red)
            } else if x < 0.5 {
                Some(Color::Blue)
            } else {
                None
            }
        })
        .collect();
    let mut ledger = RoundLedger::new();
    ledger.charge("shatter", 2, 2.0, "2");
    settle(b, tentative, ledger)
}

fn settle(b: &BipartiteInstance, mut values: Vec<Option<Color>>, ledger: RoundLedger) -> ShatterOutcome {
    let mut wipe = vec![false; b.right_count()];
    for u in 0..b.left_count() {
        let nb = b.left_neighbors(u);
        let colored = nb.iter().filter(|&&v| values[v].is_some()).count();
        if 4 * colored > 3 * nb.len() {
            for &v in nb {
                wipe[v] = true;
            }
        }
    }
    for (x, w) in values.iter_mut().zip(&wipe) {
        if *w {
            *x = None;
        }
    }
    let satisfied: Vec<bool> = (0..b.left_count())
        .map(|u| {
            let nb = b.left_neighbors(u);
            nb.iter().any(|&v| values[v] == Some(Color::Red)) && nb.iter().any(|&v| values[v] == Some(Color::Blue))
        })
        .collect();
    let residual_left = satisfied.iter().map(|s| !s).collect();
    let residual_right = values.iter().map(Option::is_none).collect();
    ShatterOutcome { coloring: TwoColoring { values }, satisfied, residual_left, residual_right, ledger }
}

const T: f64 = 0.5;

/// Derandomized shattering: V-nodes pick red, blue or uncolored to minimize a sum of
/// per-U-node pessimistic terms for the shattering's bad events, under the 1/4, 1/4, 1/2
/// distribution of the undecided nodes. For a U-node of degree `d` with `c` colored,
/// `x` red, `y` blue and `m` undecided neighbors the terms are
/// `e^{t(c - 3d/4)} ((1 + e^t)/2)^m` (too many colored),
/// `e^{-t(c - d/4)} ((1 + e^-t)/2)^m` (too few colored), and the exact probabilities
/// `[x = 0] (3/4)^m + [y = 0] (3/4)^m` that no red or no blue neighbor appears.
/// Each is a conditional expectation, so the minimizing choice never increases the sum.
struct ShatterProgram<'a> {
    instance: &'a BipartiteInstance,
    red: Vec<u32>,
    blue: Vec<u32>,
    undecided: Vec<u32>,
}

impl ShatterProgram<'_> {
    fn term(&self, u: usize, red: u32, blue: u32, undecided: u32) -> f64 {
        let d = self.instance.left_degree(u) as f64;
        let c = (red + blue) as f64;
        let m = undecided as i32;
        let hi = (T * (c - 0.75 * d)).exp() * ((1.0 + T.exp()) / 2.0).powi(m);
        let lo = (-T * (c - 0.25 * d)).exp() * ((1.0 + (-T).exp()) / 2.0).powi(m);
        let none = 0.75f64.powi(m);
        let mono = none * (u32::from(red == 0) + u32::from(blue == 0)) as f64;
        hi + lo + mono
    }
}

impl SlocalProgram for ShatterProgram<'_> {
    type Output = Option<Color>;

    fn radius(&self) -> usize {
        4
    }

    fn process(&mut self, node: usize, _view: &mut View<'_, Self::Output>) -> Result<Self::Output> {
        let left = self.instance.left_count();
        if node < left {
            return Ok(None);
        }
        let v = node - left;
        let options = [Some(Color::Red), Some(Color::Blue), None];
        let mut best = (f64::INFINITY, None);
        for opt in options {
            let mut delta = 0.0;
            for &u in self.instance.right_neighbors(v) {
                let (r, b, m) = (self.red[u], self.blue[u], self.undecided[u]);
                let before = self.term(u, r, b, m);
                let after = match opt {
                    Some(Color::Red) => self.term(u, r + 1, b, m - 1),
                    Some(Color::Blue) => self.term(u, r, b + 1, m - 1),
                    None => self.term(u, r, b, m - 1),
                };
                delta += after - before;
            }
            if delta < best.0 {
                best = (delta, opt);
            }
        }
        let choice = best.1;
        for &u in self.instance.right_neighbors(v) {
            self.undecided[u] -= 1;
            match choice {
                Some(Color::Red) => self.red[u] += 1,
                Some(Color::Blue) => self.blue[u] += 1,
                None => {}
            }
        }
        Ok(choice)
    }
}

/// Deterministic counterpart of [`shatter`], scheduled over a distance-4 coloring.
pub fn derandomized_shatter(b: &BipartiteInstance) -> Result<ShatterOutcome> {
    let left = b.left_count();
    let g = b.to_sim_graph();
    let pc = power_graph_coloring(&g, 4)?;
    let schedule: Vec<Option<usize>> = (0..g.node_count()).map(|x| (x >= left).then(|| pc.colors[x])).collect();
    let mut program = ShatterProgram {
        instance: b,
        red: vec![0; left],
        blue: vec![0; left],
        undecided: (0..left).map(|u| b.left_degree(u) as u32).collect(),
    };
    let run = slocal_to_local(&mut program, &g, 4, &schedule)?;
    let values = run.outputs[left..].iter().map(|o| o.flatten()).collect();
    let mut ledger = RoundLedger::new();
    ledger.charge("distance-4 coloring", pc.rounds, pc.nominal, "Delta(B^4) + log* n");
    let nominal = ((b.max_left_degree() * b.rank()) as f64).powi(2);
    ledger.charge("derandomized shatter", run.rounds + 1, nominal, "(Delta * r)^2");
    Ok(settle(b, values, ledger))
}
