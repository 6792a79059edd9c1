use std::collections::VecDeque;

use super::{BipartiteInstance, SimGraph, VirtualNodeMap};
use crate::error::{Error, Result};

/// Bipartite instance of a general graph: every node `v` gets a constraint copy `v_L`
/// (left index `v`) and a variable copy `v_R` (right index `v`), and each edge `{u, v}`
/// yields the edges `v_L - u_R` and `u_L - v_R`.
pub fn graph_to_weaksplit_instance(g: &SimGraph) -> Result<BipartiteInstance> {
    let n = g.node_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for &(a, b) in g.edges() {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        edges.push((a, b));
        edges.push((b, a));
    }
    BipartiteInstance::new(n, n, edges)
}

/// Splits every U-node of degree `d >= delta` into `floor(d / delta)` virtual nodes.
/// Each one takes a contiguous run of the node's neighbors in ascending V order, and
/// the first `d mod chunks` runs get one extra neighbor. All resulting U-degrees lie in
/// `[delta, 2 * delta)`.
pub fn split_heavy_left_nodes(b: &BipartiteInstance, delta: usize) -> Result<(BipartiteInstance, VirtualNodeMap)> {
    if delta == 0 {
        return Err(Error::ParamViolation("split threshold must be positive".into()));
    }
    let mut origin = Vec::new();
    let mut virtuals = vec![Vec::new(); b.left_count()];
    let mut edges = Vec::with_capacity(b.edge_count());
    for (u, slots) in virtuals.iter_mut().enumerate() {
        let nbrs = b.left_neighbors(u);
        let d = nbrs.len();
        if d < delta {
            return Err(Error::DegreeBelowDelta { node: u, degree: d, delta });
        }
        let chunks = d / delta;
        let (base, extra) = (d / chunks, d % chunks);
        let mut start = 0;
        for c in 0..chunks {
            let len = base + usize::from(c < extra);
            let id = origin.len();
            origin.push(u);
            slots.push(id);
            edges.extend(nbrs[start..start + len].iter().map(|&v| (id, v)));
            start += len;
        }
    }
    let inst = BipartiteInstance::new(origin.len(), b.right_count(), edges)?;
    Ok((inst, VirtualNodeMap { origin, virtuals }))
}

/// Length of the shortest cycle if it is at most `cap`, otherwise `cap + 1`.
/// Forests (including the empty graph) report `cap + 1`.
pub fn girth(g: &SimGraph, cap: usize) -> usize {
    let n = g.node_count();
    if g.is_multigraph() {
        if g.edges().iter().any(|&(a, b)| a == b) {
            return 1.min(cap + 1);
        }
        let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return 2.min(cap + 1);
        }
    }
    if is_forest(g) {
        return cap + 1;
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(x) = queue.pop_front() {
            // any cycle found from here on has length >= 2 * dist[x] + 1
            if 2 * dist[x] + 1 >= best || 2 * dist[x] + 1 > cap {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for &t in &touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        if best == 3 {
            break;
        }
    }
    if best <= cap {
        best
    } else {
        cap + 1
    }
}

fn is_forest(g: &SimGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.node_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// One connected component of a sub-instance, with maps back to the parent indices.
#[derive(Clone, Debug)]
pub struct Component {
    pub instance: BipartiteInstance,
    pub left_map: Vec<usize>,
    pub right_map: Vec<usize>,
    /// Node count of the parent instance.
    pub global_n: usize,
}

impl Component {
    /// Node count of the component itself.
    pub fn n(&self) -> usize {
        self.instance.n()
    }
}

/// Connected components of the sub-instance induced by the kept U- and V-nodes,
/// ordered by their smallest node (U-nodes before V-nodes).
pub fn connected_components(b: &BipartiteInstance, keep_left: &[bool], keep_right: &[bool]) -> Vec<Component> {
    let (l, r) = (b.left_count(), b.right_count());
    let mut seen_left = vec![false; l];
    let mut seen_right = vec![false; r];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let starts = (0..l).map(|u| (true, u)).chain((0..r).map(|v| (false, v)));
    for (is_left, s) in starts {
        let fresh = if is_left { keep_left[s] && !seen_left[s] } else { keep_right[s] && !seen_right[s] };
        if !fresh {
            continue;
        }
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        if is_left {
            seen_left[s] = true;
        } else {
            seen_right[s] = true;
        }
        stack.push((is_left, s));
        while let Some((side, x)) = stack.pop() {
            if side {
                lefts.push(x);
                for &v in b.left_neighbors(x) {
                    if keep_right[v] && !seen_right[v] {
                        seen_right[v] = true;
                        stack.push((false, v));
                    }
                }
            } else {
                rights.push(x);
                for &u in b.right_neighbors(x) {
                    if keep_left[u] && !seen_left[u] {
                        seen_left[u] = true;
                        stack.push((true, u));
                    }
                }
            }
        }
        lefts.sort_unstable();
        rights.sort_unstable();
        let mut right_pos = std::collections::HashMap::with_capacity(rights.len());
        for (i, &v) in rights.iter().enumerate() {
            right_pos.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &u) in lefts.iter().enumerate() {
            for &v in b.left_neighbors(u) {
                if let Some(&j) = right_pos.get(&v) {
                    edges.push((i, j));
                }
            }
        }
        let instance = BipartiteInstance::new(lefts.len(), rights.len(), edges).expect("component edges are distinct");
        out.push(Component { instance, left_map: lefts, right_map: rights, global_n: b.n() });
    }
    out
}
