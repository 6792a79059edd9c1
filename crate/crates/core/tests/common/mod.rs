//! Fixtures and brute-force reference definitions shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitsim::graph::{graph_to_weaksplit_instance, BipartiteInstance, SimGraph};
use splitsim::harness::{generate, Generated, GeneratorKind};
use splitsim::weak::{Color, TwoColoring};

pub fn bip(kind: GeneratorKind, seed: u64) -> BipartiteInstance {
    match generate(&kind, seed).expect("fixture parameters are feasible") {
        Generated::Bipartite(b) => b,
        Generated::Graph(g) => graph_to_weaksplit_instance(&g).expect("graph converts"),
    }
}

pub fn graph(kind: GeneratorKind, seed: u64) -> SimGraph {
    match generate(&kind, seed).expect("fixture parameters are feasible") {
        Generated::Graph(g) => g,
        Generated::Bipartite(_) => panic!("{kind:?} is not a graph generator"),
    }
}

/// `ceil(log2 n)` on integers.
pub fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

/// U-nodes without both a red and a blue neighbor, straight from the definition.
pub fn weak_unsatisfied(b: &BipartiteInstance, values: &[Option<Color>]) -> Vec<usize> {
    (0..b.left_count())
        .filter(|&u| {
            let colors: Vec<Option<Color>> = b.left_neighbors(u).iter().map(|&v| values[v]).collect();
            !(colors.contains(&Some(Color::Red)) && colors.contains(&Some(Color::Blue)))
        })
        .collect()
}

/// Local search for a weak splitting: recolor a random neighbor of a random unsatisfied
/// U-node until none is left.
pub fn walk_split(b: &BipartiteInstance, seed: u64) -> Option<TwoColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values: Vec<Option<Color>> =
        (0..b.right_count()).map(|_| Some(if rng.gen_bool(0.5) { Color::Red } else { Color::Blue })).collect();
    for _ in 0..200_000 {
        let bad = weak_unsatisfied(b, &values);
        if bad.is_empty() {
            return Some(TwoColoring { values });
        }
        let u = bad[rng.gen_range(0..bad.len())];
        let nb = b.left_neighbors(u);
        if nb.is_empty() {
            return None;
        }
        let v = nb[rng.gen_range(0..nb.len())];
        values[v] = Some(match values[v] {
            Some(Color::Red) => Color::Blue,
            _ => Color::Red,
        });
    }
    None
}

/// Every edge set on `n` labelled nodes in which each node has degree at most `cap`.
pub fn graphs_with_max_degree(n: usize, cap: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut deg = vec![0usize; n];
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        cap: usize,
        deg: &mut [usize],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == pairs.len() {
            out.push(chosen.clone());
            return;
        }
        rec(i + 1, pairs, cap, deg, chosen, out);
        let (a, b) = pairs[i];
        if deg[a] < cap && deg[b] < cap {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            rec(i + 1, pairs, cap, deg, chosen, out);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
    }
    rec(0, &pairs, cap, &mut deg, &mut chosen, &mut out);
    out
}

/// All simple graphs on `n` labelled nodes.
pub fn all_graphs(n: usize) -> Vec<SimGraph> {
    graphs_with_max_degree(n, n).into_iter().map(|e| SimGraph::new(n, e).unwrap()).collect()
}

/// Complement of an edge set on `n` nodes.
pub fn complement(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|e| !edges.contains(e)).collect()
}

/// All bipartite instances with `left` U-nodes and `right` V-nodes.
pub fn all_bipartite(left: usize, right: usize) -> Vec<BipartiteInstance> {
    let slots: Vec<(usize, usize)> = (0..left).flat_map(|u| (0..right).map(move |v| (u, v))).collect();
    (0u64..1 << slots.len())
        .map(|mask| {
            let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            BipartiteInstance::new(left, right, edges).unwrap()
        })
        .collect()
}

/// Every assignment of `0..base` to `len` positions.
pub fn assignments(len: usize, base: usize) -> Vec<Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total)
        .map(|mut x| {
            (0..len)
                .map(|_| {
                    let d = x % base;
                    x /= base;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn color_of(x: usize) -> Option<Color> {
    match x {
        0 => None,
        1 => Some(Color::Red),
        _ => Some(Color::Blue),
    }
}
