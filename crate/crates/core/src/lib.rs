//! Simulation of distributed splitting algorithms on bipartite graphs.
//!
//! A splitting instance is a bipartite graph whose left nodes are constraints and
//! whose right nodes are variables. A weak splitting colors the variables red and blue
//! so that every constraint sees both colors. The crate provides deterministic and
//! randomized solvers, degree-splitting based reductions, multicolor splittings,
//! applications (sinkless orientation, coloring, MIS), independent checkers, and an
//! experiment harness. Every solver reports the LOCAL rounds it simulated next to the
//! nominal round charge of the method it stands for.

pub mod degree;
pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod multicolor;
pub mod reductions;
pub mod verify;
pub mod weak;

pub use error::{Error, Result};
