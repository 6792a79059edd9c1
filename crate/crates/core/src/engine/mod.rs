//! Round-by-round LOCAL simulation, sequential SLOCAL execution, and the bookkeeping
//! that charges simulated and nominal round counts to named phases.

mod ball;
mod ledger;
mod power;
pub mod rng;
mod slocal;
mod sync;

pub use ball::BallExplorer;
pub use ledger::{Phase, RoundLedger};
pub use power::{log_star, power_graph_coloring, PowerColoring};
pub use slocal::{run_slocal, slocal_to_local, ScheduledRun, SlocalProgram, View};
pub use sync::{run_sync, NodeContext, NodeProgram, Step, SyncRun};
