use super::BallExplorer;
use crate::error::{Error, Result};
use crate::graph::SimGraph;

/// A sequential-local program: nodes are processed one at a time and each may read
/// the outputs of already processed nodes within distance `radius()`.
///
/// Programs may keep caches in `self` as long as every cached quantity a node reads is
/// a function of outputs inside its radius-`radius()` ball.
pub trait SlocalProgram {
    type Output: Clone;

    fn radius(&self) -> usize;

    fn process(&mut self, node: usize, view: &mut View<'_, Self::Output>) -> Result<Self::Output>;
}

/// Radius-checked window onto the graph and the outputs decided so far.
pub struct View<'a, O> {
    graph: &'a SimGraph,
    center: usize,
    radius: usize,
    outputs: &'a [Option<O>],
    explorer: &'a mut BallExplorer,
    explored: bool,
}

impl<'a, O> View<'a, O> {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn distance(&mut self, x: usize) -> Option<usize> {
        if x == self.center {
            return Some(0);
        }
        if !self.explored {
            self.explorer.explore(self.graph, self.center, self.radius);
            self.explored = true;
        }
        self.explorer.distance(x)
    }

    /// Neighbors of a node strictly inside the ball.
    pub fn neighbors(&mut self, x: usize) -> Result<&'a [usize]> {
        match self.distance(x) {
            Some(d) if d < self.radius => Ok(self.graph.neighbors(x)),
            _ => Err(self.violation(x)),
        }
    }

    /// Output of a node in the ball; `None` if it has not been processed yet.
    pub fn output(&mut self, x: usize) -> Result<Option<&'a O>> {
        match self.distance(x) {
            Some(_) => Ok(self.outputs[x].as_ref()),
            None => Err(self.violation(x)),
        }
    }

    fn violation(&self, target: usize) -> Error {
        Error::RadiusViolation { center: self.center, target, radius: self.radius }
    }
}

fn process_one<P: SlocalProgram>(
    program: &mut P,
    g: &SimGraph,
    node: usize,
    outputs: &mut [Option<P::Output>],
    explorer: &mut BallExplorer,
) -> Result<()> {
    let out = {
        let mut view =
            View { graph: g, center: node, radius: program.radius(), outputs: &*outputs, explorer, explored: false };
        program.process(node, &mut view)?
    };
    outputs[node] = Some(out);
    Ok(())
}

/// Processes the nodes of `order` one after another. Nodes not listed get no output.
pub fn run_slocal<P: SlocalProgram>(program: &mut P, g: &SimGraph, order: &[usize]) -> Result<Vec<Option<P::Output>>> {
    let mut outputs: Vec<Option<P::Output>> = vec![None; g.node_count()];
    let mut explorer = BallExplorer::new(g.node_count());
    for &v in order {
        crate::graph::check_index(v, g.node_count())?;
        process_one(program, g, v, &mut outputs, &mut explorer)?;
    }
    Ok(outputs)
}

#[derive(Clone, Debug)]
pub struct ScheduledRun<O> {
    pub outputs: Vec<Option<O>>,
    /// `k` rounds per color class.
    pub rounds: u64,
    pub classes: usize,
}

/// Runs an SLOCAL program in LOCAL fashion: one phase per color class of `schedule`,
/// which must color the scheduled nodes so that equal colors are more than `k` apart.
/// Nodes with `None` are not processed.
pub fn slocal_to_local<P: SlocalProgram>(
    program: &mut P,
    g: &SimGraph,
    k: usize,
    schedule: &[Option<usize>],
) -> Result<ScheduledRun<P::Output>> {
    if program.radius() > k {
        return Err(Error::ParamViolation(format!(
            "program radius {} exceeds schedule distance {k}",
            program.radius()
        )));
    }
    if schedule.len() != g.node_count() {
        return Err(Error::ParamViolation("schedule length differs from node count".into()));
    }
    let mut explorer = BallExplorer::new(g.node_count());
    for v in 0..g.node_count() {
        let Some(c) = schedule[v] else { continue };
        for &w in explorer.explore(g, v, k) {
            if w != v && schedule[w] == Some(c) {
                return Err(Error::InvalidScheduleColoring(v.min(w), v.max(w), k));
            }
        }
    }
    let mut classes: Vec<(usize, usize)> = schedule.iter().enumerate().filter_map(|(v, c)| c.map(|c| (c, v))).collect();
    classes.sort_unstable();
    let mut outputs: Vec<Option<P::Output>> = vec![None; g.node_count()];
    let mut distinct = 0;
    let mut last = None;
    for &(c, v) in &classes {
        if last != Some(c) {
            distinct += 1;
            last = Some(c);
        }
        process_one(program, g, v, &mut outputs, &mut explorer)?;
    }
    Ok(ScheduledRun { outputs, rounds: (distinct * k) as u64, classes: distinct })
}
