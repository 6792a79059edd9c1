use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rng::node_rng;
use crate::error::{Error, Result};
use crate::graph::SimGraph;

/// What a node sees about itself.
#[derive(Clone, Copy, Debug)]
pub struct NodeContext<'a> {
    pub index: usize,
    pub id: u64,
    pub neighbors: &'a [usize],
    graph: &'a SimGraph,
}

impl NodeContext<'_> {
    pub fn neighbor_id(&self, neighbor: usize) -> u64 {
        self.graph.id(neighbor)
    }

    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

/// Result of one node step: messages for the next round and an optional final output.
/// A node that halts still has its messages delivered.
#[derive(Clone, Debug)]
pub struct Step<M, O> {
    pub send: Vec<(usize, M)>,
    pub halt: Option<O>,
}

impl<M, O> Step<M, O> {
    pub fn idle() -> Self {
        Step { send: Vec::new(), halt: None }
    }

    pub fn halt(output: O) -> Self {
        Step { send: Vec::new(), halt: Some(output) }
    }
}

/// A synchronous message-passing program. In round `t` a node sees exactly the
/// messages its neighbors sent in round `t - 1`; nothing sent in round `t` is visible
/// before round `t + 1`.
pub trait NodeProgram: Sync {
    type State: Send;
    type Message: Clone + Send + Sync;
    type Output: Send;

    fn init(&self, ctx: &NodeContext<'_>) -> Self::State;

    fn step(
        &self,
        state: &mut Self::State,
        ctx: &NodeContext<'_>,
        round: u64,
        inbox: &[(usize, Self::Message)],
        rng: &mut ChaCha8Rng,
    ) -> Step<Self::Message, Self::Output>;
}

#[derive(Clone, Debug)]
pub struct SyncRun<O> {
    pub outputs: Vec<O>,
    /// Index of the round in which the last node halted.
    pub rounds: u64,
}

/// Runs `program` on every node of `g` until all nodes halt. Nodes are stepped in
/// parallel; outputs do not depend on the thread count.
pub fn run_sync<P: NodeProgram>(program: &P, g: &SimGraph, seed: u64, max_rounds: u64) -> Result<SyncRun<P::Output>> {
    let n = g.node_count();
    let ctx = |v: usize| NodeContext { index: v, id: g.id(v), neighbors: g.neighbors(v), graph: g };
    let mut states: Vec<Option<P::State>> = (0..n).map(|v| Some(program.init(&ctx(v)))).collect();
    let mut outputs: Vec<Option<P::Output>> = (0..n).map(|_| None).collect();
    let mut inboxes: Vec<Vec<(usize, P::Message)>> = vec![Vec::new(); n];
    let mut round = 0u64;
    let mut last_halt = 0u64;
    loop {
        if states.iter().all(Option::is_none) {
            break;
        }
        if round > max_rounds {
            return Err(Error::RoundLimitExceeded(max_rounds));
        }
        let steps: Vec<Option<Step<P::Message, P::Output>>> = states
            .par_iter_mut()
            .zip(inboxes.par_iter())
            .enumerate()
            .map(|(v, (state, inbox))| {
                state.as_mut().map(|s| {
                    let mut rng = node_rng(seed, g.id(v), round);
                    program.step(s, &ctx(v), round, inbox, &mut rng)
                })
            })
            .collect();
        let mut next: Vec<Vec<(usize, P::Message)>> = vec![Vec::new(); n];
        for (v, step) in steps.into_iter().enumerate() {
            let Some(step) = step else { continue };
            for (target, msg) in step.send {
                if g.neighbors(v).binary_search(&target).is_err() {
                    return Err(Error::RadiusViolation { center: v, target, radius: 1 });
                }
                next[target].push((v, msg));
            }
            if let Some(out) = step.halt {
                outputs[v] = Some(out);
                states[v] = None;
                last_halt = round;
            }
        }
        // messages addressed to halted nodes are dropped
        for (v, inbox) in next.iter_mut().enumerate() {
            if states[v].is_none() {
                inbox.clear();
            }
        }
        inboxes = next;
        round += 1;
    }
    Ok(SyncRun { outputs: outputs.into_iter().map(|o| o.expect("every node halted")).collect(), rounds: last_halt })
}
