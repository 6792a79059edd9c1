use serde::{Deserialize, Serialize};

/// One charged phase: rounds actually executed by the simulator next to the
/// closed-form nominal charge (constant 1) that the phase stands for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub name: String,
    pub simulated_rounds: u64,
    pub nominal_rounds: f64,
    pub formula: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoundLedger {
    pub phases: Vec<Phase>,
}

impl RoundLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, name: &str, simulated: u64, nominal: f64, formula: &str) {
        let nominal = if nominal.is_finite() { nominal.max(0.0) } else { 0.0 };
        self.phases.push(Phase {
            name: name.to_string(),
            simulated_rounds: simulated,
            nominal_rounds: nominal,
            formula: formula.to_string(),
        });
    }

    /// Appends the phases of `other`, prefixing their names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: RoundLedger) {
        for mut p in other.phases {
            p.name = format!("{prefix}/{}", p.name);
            self.phases.push(p);
        }
    }

    pub fn total_simulated(&self) -> u64 {
        self.phases.iter().map(|p| p.simulated_rounds).sum()
    }

    pub fn total_nominal(&self) -> f64 {
        self.phases.iter().map(|p| p.nominal_rounds).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
