use crate::graph::SimGraph;

/// Reusable bounded breadth-first search. Marks are reset by bumping a stamp, so
/// repeated small explorations on a large graph cost only what they touch.
#[derive(Clone, Debug)]
pub struct BallExplorer {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    current: u32,
    ball: Vec<usize>,
}

impl BallExplorer {
    pub fn new(n: usize) -> Self {
        BallExplorer { stamp: vec![0; n], dist: vec![0; n], current: 0, ball: Vec::new() }
    }

    /// Nodes within distance `radius` of `center`, in BFS order (center first).
    pub fn explore(&mut self, g: &SimGraph, center: usize, radius: usize) -> &[usize] {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
        self.ball.clear();
        self.stamp[center] = self.current;
        self.dist[center] = 0;
        self.ball.push(center);
        let mut head = 0;
        while head < self.ball.len() {
            let x = self.ball[head];
            head += 1;
            let d = self.dist[x];
            if d as usize >= radius {
                continue;
            }
            for &y in g.neighbors(x) {
                if self.stamp[y] != self.current {
                    self.stamp[y] = self.current;
                    self.dist[y] = d + 1;
                    self.ball.push(y);
                }
            }
        }
        &self.ball
    }

    /// Distance from the last explored center, if `x` was reached.
    pub fn distance(&self, x: usize) -> Option<usize> {
        (self.stamp[x] == self.current).then(|| self.dist[x] as usize)
    }

    pub fn last_ball(&self) -> &[usize] {
        &self.ball
    }
}
