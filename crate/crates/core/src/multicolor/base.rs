use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::{MultiColoring, MulticolorParams};
use crate::engine::rng::{node_rng, substream};
use crate::engine::RoundLedger;
use crate::error::{Error, Result};
use crate::graph::BipartiteInstance;
use crate::verify::ceil_slack;

/// Number of colors a random base splitting uses: 3 when `lambda >= 2/3`, otherwise
/// `ceil(3 / lambda)`. Fails if that exceeds the `colors` available.
pub fn choose_cprime(colors: usize, lambda: f64) -> Result<usize> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::ParamViolation(format!("lambda = {lambda} outside (0, 1]")));
    }
    let cp = if lambda >= 2.0 / 3.0 { 3 } else { ceil_slack(3.0 / lambda) };
    if cp > colors {
        return Err(Error::ParamViolation(format!("lambda = {lambda} needs {cp} colors, only {colors} available")));
    }
    Ok(cp)
}

/// Independent uniform color in `0..palette` for every V-node.
pub fn random_multicolor(b: &BipartiteInstance, palette: usize, seed: u64) -> MultiColoring {
    let colors = (0..b.right_count()).map(|v| node_rng(seed, v as u64, 0).gen_range(0..palette)).collect();
    MultiColoring { colors, palette }
}

/// Random `C'` coloring, redrawn until every U-node has fewer than `ceil(lambda * deg)`
/// neighbors of each color. That is the success event the tail bound controls, and it
/// implies the `(C, lambda)` condition `count <= ceil(lambda * deg)`. The strict form
/// also gives `count < lambda * deg`, so iterated refinements compose without rounding
/// loss. Returns the coloring, its ledger, and the number of retries.
pub fn multicolor_split_base(
    b: &BipartiteInstance,
    colors: usize,
    lambda: f64,
    seed: u64,
    params: &MulticolorParams,
) -> Result<(MultiColoring, RoundLedger, u32)> {
    let cp = choose_cprime(colors, lambda)?;
    let required = params.alpha / lambda * (b.n() as f64).ln();
    for u in 0..b.left_count() {
        if (b.left_degree(u) as f64) < required {
            return Err(Error::PreconditionDegree { node: u, degree: b.left_degree(u), required });
        }
    }
    let mut counts = vec![0usize; cp];
    for attempt in 0..=params.retry_limit {
        let mc = random_multicolor(b, cp, substream(seed, attempt as u64));
        let ok = (0..b.left_count()).all(|u| {
            let limit = ceil_slack(lambda * b.left_degree(u) as f64);
            counts.iter_mut().for_each(|c| *c = 0);
            for &v in b.left_neighbors(u) {
                counts[mc.colors[v]] += 1;
            }
            counts.iter().all(|&c| c < limit)
        });
        if ok {
            let mut ledger = RoundLedger::new();
            ledger.charge("random colors", 0, 0.0, "0");
            ledger.charge("verify", 1, 1.0, "1");
            return Ok((mc, ledger, attempt));
        }
    }
    Err(Error::RetryExhausted(params.retry_limit + 1))
}

/// Tail of `X ~ Bin(d, 1/C')` at `k = ceil(lambda * d)` next to its two upper bounds,
/// the union bound `binom(d, k) / C'^k` and the closed form `(e / (lambda C'))^(lambda d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBounds {
    pub k: usize,
    pub exact: f64,
    pub union: f64,
    pub closed_form: f64,
    /// Decided on exact integers: `exact <= union`.
    pub union_holds: bool,
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `num / den` in floating point; each side keeps its own top 60 bits.
fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let top = |x: &BigUint| {
        let shift = x.bits().saturating_sub(60);
        ((x >> shift).to_f64().unwrap_or(0.0), shift as i32)
    };
    let ((n, sn), (d, sd)) = (top(num), top(den));
    n / d * 2f64.powi(sn - sd)
}

pub fn tail_bounds(d: usize, cprime: usize, lambda: f64) -> TailBounds {
    let k = ceil_slack(lambda * d as f64);
    let c = BigUint::from(cprime);
    let total = c.pow(d as u32);
    // exact tail times C'^d: sum over j >= k of binom(d, j) (C' - 1)^(d - j)
    let mut tail = BigUint::zero();
    for j in k..=d {
        tail += binomial(d, j) * BigUint::from(cprime - 1).pow((d - j) as u32);
    }
    let union_num = if k <= d { binomial(d, k) * c.pow((d - k) as u32) } else { BigUint::zero() };
    let closed_form = (std::f64::consts::E / (lambda * cprime as f64)).powf(lambda * d as f64);
    TailBounds {
        k,
        exact: ratio(&tail, &total),
        union: ratio(&union_num, &total),
        closed_form,
        union_holds: tail <= union_num,
    }
}
