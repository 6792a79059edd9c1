use std::cmp::Ordering;
use std::collections::HashMap;

use log::debug;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::engine::{power_graph_coloring, slocal_to_local, RoundLedger, SlocalProgram, View};
use crate::error::{Error, Result};
use crate::graph::BipartiteInstance;
use crate::weak::{Color, TwoColoring};

/// Default `c` in the degree requirement `d >= c ln n / eps^2`. The requirement is only a
/// cheap gate; the exact initial estimator decides feasibility.
pub const DEFAULT_SPLIT_CONSTANT: f64 = 0.1;

const SLACK: f64 = 1e-9;

/// Red counts allowed for a constraint of degree `d`: both the red and the blue count
/// must lie in `[(1/2 - eps) d, (1/2 + eps) d]`. Returns `None` if no integer fits.
pub fn split_window(d: usize, eps: f64) -> Option<(usize, usize)> {
    let lo = ((0.5 - eps) * d as f64 - SLACK).ceil().max(0.0) as usize;
    let hi = (((0.5 + eps) * d as f64 + SLACK).floor() as usize).min(d);
    let (a, b) = (lo.max(d.saturating_sub(hi)), hi.min(d.saturating_sub(lo)));
    (a <= b).then_some((a, b))
}

#[derive(Clone, Debug)]
pub struct StrongSplitRun {
    pub coloring: TwoColoring,
    pub ledger: RoundLedger,
    pub initial_estimator: f64,
    pub non_increasing: bool,
}

/// Prefix sums of binomial rows: `prefix[m][k] = sum_{j < k} C(m, j)`.
#[derive(Default)]
struct Binomials {
    prefix: HashMap<u32, Vec<BigUint>>,
}

impl Binomials {
    fn row(&mut self, m: u32) -> &[BigUint] {
        self.prefix.entry(m).or_insert_with(|| {
            let mut out = Vec::with_capacity(m as usize + 2);
            let mut acc = BigUint::zero();
            let mut c = BigUint::one();
            out.push(acc.clone());
            for k in 0..=m {
                acc += &c;
                out.push(acc.clone());
                c = c * (m - k) / (k + 1);
            }
            out
        })
    }

    /// Completions of `m` fair coins that land a count `x + K` outside `[a, b]`.
    fn bad(&mut self, m: u32, x: u32, (a, b): (u32, u32)) -> BigUint {
        let lo = a.saturating_sub(x);
        let row = self.row(m);
        let all = &row[m as usize + 1];
        if x > b || lo > m {
            return all.clone();
        }
        let hi = (b - x).min(m);
        all - (&row[hi as usize + 1] - &row[lo as usize])
    }
}

/// Conditional-expectation program for strong splitting, radius 2. The estimator is the
/// exact expected number of constraints whose red count leaves its window under a
/// uniformly random completion, held as a numerator over `2^scale`.
struct StrongSplitProgram<'a> {
    instance: &'a BipartiteInstance,
    windows: Vec<Option<(u32, u32)>>,
    red: Vec<u32>,
    undecided: Vec<u32>,
    scale: u32,
    total: BigUint,
    binomials: Binomials,
    monotone: bool,
}

impl<'a> StrongSplitProgram<'a> {
    fn new(instance: &'a BipartiteInstance, windows: Vec<Option<(u32, u32)>>) -> Self {
        let scale = instance.max_left_degree() as u32;
        let undecided: Vec<u32> = (0..instance.left_count()).map(|u| instance.left_degree(u) as u32).collect();
        let mut p = StrongSplitProgram {
            instance,
            windows,
            red: vec![0; instance.left_count()],
            undecided,
            scale,
            total: BigUint::zero(),
            binomials: Binomials::default(),
            monotone: true,
        };
        let mut total = BigUint::zero();
        for u in 0..instance.left_count() {
            total += p.term(u, 0, p.undecided[u]);
        }
        p.total = total;
        p
    }

    fn term(&mut self, u: usize, red: u32, undecided: u32) -> BigUint {
        match self.windows[u] {
            Some(w) => self.binomials.bad(undecided, red, w) << (self.scale - undecided),
            None => BigUint::zero(),
        }
    }

    fn below_one(&self) -> bool {
        self.total < BigUint::one() << self.scale
    }

    fn value(&self) -> f64 {
        let shift = self.total.bits().saturating_sub(53);
        let top = (&self.total >> shift).to_f64().expect("53-bit value");
        top * 2f64.powi(shift as i32 - self.scale as i32)
    }
}

impl SlocalProgram for StrongSplitProgram<'_> {
    type Output = Option<Color>;

    fn radius(&self) -> usize {
        2
    }

    fn process(&mut self, node: usize, _view: &mut View<'_, Self::Output>) -> Result<Self::Output> {
        let left = self.instance.left_count();
        if node < left {
            return Ok(None);
        }
        let v = node - left;
        let (mut before, mut if_red, mut if_blue) = (BigUint::zero(), BigUint::zero(), BigUint::zero());
        for &u in self.instance.right_neighbors(v) {
            let (r, m) = (self.red[u], self.undecided[u]);
            before += self.term(u, r, m);
            if_red += self.term(u, r + 1, m - 1);
            if_blue += self.term(u, r, m - 1);
        }
        // on a tie (typically once every window is safe) lean toward the side the
        // neighborhood has fewer of, so the halves stay balanced
        let color = match if_red.cmp(&if_blue) {
            Ordering::Less => Color::Red,
            Ordering::Greater => Color::Blue,
            Ordering::Equal => {
                let lean: i64 = self
                    .instance
                    .right_neighbors(v)
                    .iter()
                    .map(|&u| {
                        let decided = self.instance.left_degree(u) as i64 - self.undecided[u] as i64;
                        decided - 2 * self.red[u] as i64
                    })
                    .sum();
                if lean >= 0 {
                    Color::Red
                } else {
                    Color::Blue
                }
            }
        };
        let after = if color == Color::Red { if_red } else { if_blue };
        if after > before {
            self.monotone = false;
        }
        self.total = &self.total + after - before;
        for &u in self.instance.right_neighbors(v) {
            self.undecided[u] -= 1;
            if color == Color::Red {
                self.red[u] += 1;
            }
        }
        Ok(Some(color))
    }
}

/// Strong splitting with every U-node constrained.
pub fn strong_split_bipartite(b: &BipartiteInstance, eps: f64) -> Result<(TwoColoring, RoundLedger)> {
    let all = vec![true; b.left_count()];
    let run = strong_split_partial(b, eps, &all, DEFAULT_SPLIT_CONSTANT)?;
    Ok((run.coloring, run.ledger))
}

/// Colors every V-node so that each constrained U-node of degree `d` has red and blue
/// counts in `[(1/2 - eps) d, (1/2 + eps) d]`. Constrained nodes need
/// `d >= c ln n / eps^2`, and the estimator must start below 1, in which case it ends at
/// 0 and the coloring is valid.
pub fn strong_split_partial(
    b: &BipartiteInstance,
    eps: f64,
    constrained: &[bool],
    c_split: f64,
) -> Result<StrongSplitRun> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::ParamViolation(format!("eps must lie in (0, 1/2], got {eps}")));
    }
    if constrained.len() != b.left_count() {
        return Err(Error::IncompleteColoring { got: constrained.len(), expected: b.left_count() });
    }
    let ln_n = (b.n().max(2) as f64).ln();
    let required = c_split * ln_n / (eps * eps);
    let mut windows = Vec::with_capacity(b.left_count());
    for (u, &c) in constrained.iter().enumerate() {
        if !c {
            windows.push(None);
            continue;
        }
        let d = b.left_degree(u);
        if (d as f64) < required {
            return Err(Error::PreconditionDegree { node: u, degree: d, required });
        }
        let (lo, hi) = split_window(d, eps)
            .ok_or_else(|| Error::InfeasibleParams(format!("no balanced count for degree {d} at eps {eps}")))?;
        windows.push(Some((lo as u32, hi as u32)));
    }
    let mut program = StrongSplitProgram::new(b, windows);
    let initial = program.value();
    if !program.below_one() {
        return Err(Error::EstimatorOverflow(initial));
    }
    let left = b.left_count();
    let g = b.to_sim_graph();
    let pc = power_graph_coloring(&g, 2)?;
    let schedule: Vec<Option<usize>> = (0..g.node_count()).map(|x| (x >= left).then(|| pc.colors[x])).collect();
    let run = slocal_to_local(&mut program, &g, 2, &schedule)?;
    debug!("strong split: n {}, eps {eps}, estimator {initial:.3e} -> {}", b.n(), program.value());
    assert!(program.total.is_zero(), "estimator below 1 must end at 0");
    let values = run.outputs[left..].iter().map(|o| o.flatten()).collect();
    let mut ledger = RoundLedger::new();
    ledger.charge("distance-2 coloring", pc.rounds, pc.nominal, "Delta(B^2) + log* n");
    let dr = (b.max_left_degree() * b.rank()) as f64;
    ledger.charge("conditional expectations", run.rounds, dr, "Delta * r");
    Ok(StrongSplitRun {
        coloring: TwoColoring { values },
        ledger,
        initial_estimator: initial,
        non_increasing: program.monotone,
    })
}
