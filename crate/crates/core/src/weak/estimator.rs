use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::Color;
use crate::graph::BipartiteInstance;

/// Pessimistic estimator for the number of unsatisfied U-nodes under a uniformly random
/// completion of a partial red/blue coloring.
///
/// For U-node `u` with `k` undecided neighbors, `red_risk(u) = 2^-k` if no neighbor is
/// blue yet (else 0), and symmetrically for `blue_risk`. The total is kept exactly as an
/// integer numerator over `2^scale`, so monotonicity is checked without rounding.
#[derive(Clone, Debug)]
pub struct Estimator {
    red: Vec<u32>,
    blue: Vec<u32>,
    undecided: Vec<u32>,
    scale: u32,
    numerator: BigUint,
}

impl Estimator {
    pub fn new(b: &BipartiteInstance) -> Self {
        let scale = b.max_left_degree() as u32;
        let undecided: Vec<u32> = (0..b.left_count()).map(|u| b.left_degree(u) as u32).collect();
        let mut est = Estimator {
            red: vec![0; b.left_count()],
            blue: vec![0; b.left_count()],
            undecided,
            scale,
            numerator: BigUint::zero(),
        };
        let mut total = BigUint::zero();
        for u in 0..b.left_count() {
            total += est.term(u);
        }
        est.numerator = total;
        est
    }

    fn pow2(&self, undecided: u32) -> BigUint {
        BigUint::from(1u8) << (self.scale - undecided)
    }

    /// Numerator of `red_risk(u) + blue_risk(u)`.
    fn term(&self, u: usize) -> BigUint {
        let mut t = BigUint::zero();
        if self.blue[u] == 0 {
            t += self.pow2(self.undecided[u]);
        }
        if self.red[u] == 0 {
            t += self.pow2(self.undecided[u]);
        }
        t
    }

    /// `(red_risk(u), blue_risk(u))` as floats.
    pub fn risks(&self, u: usize) -> (f64, f64) {
        let p = 0.5f64.powi(self.undecided[u] as i32);
        (if self.blue[u] == 0 { p } else { 0.0 }, if self.red[u] == 0 { p } else { 0.0 })
    }

    pub fn total(&self) -> f64 {
        // keep the top 53 bits so the conversion is exact up to truncation, which keeps
        // it monotone in the numerator
        let shift = self.numerator.bits().saturating_sub(53);
        let top = (&self.numerator >> shift).to_f64().expect("53-bit value");
        top * 2f64.powi(shift as i32 - self.scale as i32)
    }

    /// Exact numerator of the total over `2^scale()`.
    pub fn total_numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Exact test of `total < 1`.
    pub fn below_one(&self) -> bool {
        self.numerator < BigUint::from(1u8) << self.scale
    }

    /// The color for V-node `v` that minimizes the conditional expectation; ties go red.
    ///
    /// Coloring `v` red leaves `red_risk(u) = 2^-(k-1)` for neighbors `u` without a blue
    /// neighbor and zeroes every `blue_risk(u)`; blue is symmetric. So red wins iff
    /// `sum over {u: no blue} 2^-(k_u - 1) <= sum over {u: no red} 2^-(k_u - 1)`.
    pub fn choose(&self, b: &BipartiteInstance, v: usize) -> Color {
        let mut if_red = BigUint::zero();
        let mut if_blue = BigUint::zero();
        for &u in b.right_neighbors(v) {
            let shifted = self.pow2(self.undecided[u] - 1);
            if self.blue[u] == 0 {
                if_red += &shifted;
            }
            if self.red[u] == 0 {
                if_blue += shifted;
            }
        }
        if if_red <= if_blue {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Records the decision for V-node `v` and updates the total.
    pub fn apply(&mut self, b: &BipartiteInstance, v: usize, color: Color) {
        let mut removed = BigUint::zero();
        let mut added = BigUint::zero();
        for &u in b.right_neighbors(v) {
            removed += self.term(u);
            self.undecided[u] -= 1;
            match color {
                Color::Red => self.red[u] += 1,
                Color::Blue => self.blue[u] += 1,
            }
            added += self.term(u);
        }
        self.numerator += added;
        self.numerator -= removed;
    }

    /// U-nodes that currently have no red or no blue neighbor and nothing left undecided.
    pub fn settled_unsatisfied(&self) -> usize {
        (0..self.red.len()).filter(|&u| self.undecided[u] == 0 && (self.red[u] == 0 || self.blue[u] == 0)).count()
    }
}
