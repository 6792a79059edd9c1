use serde::{Deserialize, Serialize};

use super::Generated;
use crate::degree::EdgeOrientation;
use crate::error::{Error, Result};
use crate::graph::graph_to_weaksplit_instance;
use crate::multicolor::MultiColoring;
use crate::reductions::ProperColoring;
use crate::verify;
use crate::weak::{Color, TwoColoring};

/// Solver output in its on-disk form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "values", rename_all = "kebab-case")]
pub enum Certificate {
    TwoColoring(Vec<Option<Color>>),
    Multicoloring(Vec<usize>),
    Orientation(Vec<(usize, usize)>),
    Mis(Vec<usize>),
    Coloring(Vec<usize>),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// What a certificate is checked against, beyond the instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    /// `(C, lambda)` for multicolorings; without it the weak multicolor property is checked.
    pub multicolor: Option<(usize, f64)>,
    /// Check orientations for this max discrepancy instead of for sinks.
    pub max_discrepancy: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub violations: usize,
    /// First violation, debug-formatted.
    pub first: Option<String>,
}

impl CheckOutcome {
    pub fn is_valid(&self) -> bool {
        self.violations == 0
    }

    fn from<V: std::fmt::Debug>(v: verify::Verdict<V>) -> Self {
        CheckOutcome { violations: v.violations.len(), first: v.violations.first().map(|x| format!("{x:?}")) }
    }
}

/// Checks a certificate against an instance with the independent checkers. Two-colorings
/// and multicolorings on a plain graph are read against its weak splitting instance.
pub fn check_certificate(instance: &Generated, cert: &Certificate, params: &CheckParams) -> Result<CheckOutcome> {
    let mismatch = |what: &str| Error::ParamViolation(format!("a {what} certificate needs a different instance type"));
    let bipartite = || match instance {
        Generated::Bipartite(b) => Ok(b.clone()),
        Generated::Graph(g) => graph_to_weaksplit_instance(g),
    };
    Ok(match cert {
        Certificate::TwoColoring(values) => {
            let b = bipartite()?;
            CheckOutcome::from(verify::check_weak_splitting(&b, &TwoColoring { values: values.clone() })?)
        }
        Certificate::Multicoloring(colors) => {
            let b = bipartite()?;
            let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
            let mc = MultiColoring { colors: colors.clone(), palette };
            match params.multicolor {
                Some((c, lambda)) => CheckOutcome::from(verify::check_multicolor_splitting(&b, &mc, c, lambda, 0)?),
                None => CheckOutcome::from(verify::check_weak_multicolor(
                    &b,
                    &mc,
                    verify::weak_multicolor_degree_threshold(b.n()),
                    verify::weak_multicolor_color_threshold(b.n()),
                )?),
            }
        }
        Certificate::Orientation(arcs) => {
            let Generated::Graph(g) = instance else {
                return Err(mismatch("orientation"));
            };
            let o = EdgeOrientation { arcs: arcs.clone() };
            match params.max_discrepancy {
                Some(limit) => {
                    let report = verify::check_orientation_discrepancy(g, &o)?;
                    let over: Vec<usize> = (0..g.node_count()).filter(|&v| report.per_node[v] > limit).collect();
                    let violations = over.len() + report.mismatched.len();
                    let first = over.first().map(|&v| format!("node {v} has discrepancy {}", report.per_node[v]));
                    CheckOutcome {
                        violations,
                        first: first.or_else(|| report.mismatched.first().map(|e| format!("edge {e} mismatched"))),
                    }
                }
                None => CheckOutcome::from(verify::check_sinkless(g, &o)?),
            }
        }
        Certificate::Mis(members) => {
            let Generated::Graph(g) = instance else {
                return Err(mismatch("mis"));
            };
            CheckOutcome::from(verify::check_mis(g, members))
        }
        Certificate::Coloring(colors) => {
            let Generated::Graph(g) = instance else {
                return Err(mismatch("coloring"));
            };
            let palette = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
            CheckOutcome::from(verify::check_proper_coloring(g, &ProperColoring { colors: colors.clone(), palette })?)
        }
    })
}
