//! Acceptance suite: one check per criterion, each printed as a PASS or FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use common::*;
use splitsim::degree::{degree_rank_reduction_one_traced, degree_rank_reduction_two_traced, SplitMode};
use splitsim::graph::{log2n, BipartiteInstance, SimGraph};
use splitsim::harness::{run_experiment, Algorithm, ExperimentConfig, GeneratorKind, RunVerdict};
use splitsim::multicolor::{multicolor_split_iterate, tail_bounds, MultiColoring, MulticolorParams};
use splitsim::reductions::{
    coloring_via_splitting, mis_via_splitting_traced, sinkless_instance, splitting_to_orientation, ProperColoring,
};
use splitsim::verify::{
    check_mis, check_multicolor_splitting, check_orientation_discrepancy, check_proper_coloring, check_sinkless,
    check_uniform_split, check_weak_multicolor, check_weak_splitting, ColoringViolation, MisViolation,
    MulticolorViolation, SinklessViolation,
};
use splitsim::weak::{
    derandomized_weak_split_traced, high_girth_weak_split, randomized_weak_split, residual_gap, shatter,
    trim_then_split, weak_split_delta_ge_6r, weak_split_speedup, Color, GirthConfig, RandomizedConfig, TwoColoring,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn weak_valid(b: &BipartiteInstance, c: &TwoColoring) -> bool {
    check_weak_splitting(b, c).map(|v| v.is_valid()).unwrap_or(false)
}

// criterion 1 and 2 share the corpus

fn weak_corpus() -> &'static Vec<(String, BipartiteInstance)> {
    static CORPUS: OnceLock<Vec<(String, BipartiteInstance)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        let mut push = |kind: GeneratorKind, seed: u64| out.push((format!("{kind:?}/{seed}"), bip(kind, seed)));
        for i in 0..70u64 {
            let left = 30 + (i as usize % 31);
            push(GeneratorKind::RandomBipartite { left, right: 40, min_degree: 14, max_degree: 20, rank: left }, i);
        }
        for i in 0..40u64 {
            let left = 100 + 25 * i as usize;
            let degree = 2 * ceil_log2(2 * left) + 2;
            push(GeneratorKind::LeftRegular { left, right: left, degree }, i);
        }
        for u_deg in 20..=40 {
            push(GeneratorKind::BipartiteTree { depth: 2, u_deg, v_deg: 2 }, 0);
        }
        for i in 0..30u64 {
            let nodes = 100 + 60 * i as usize;
            push(GeneratorKind::MinDegreeGraph { nodes, min_degree: 2 * ceil_log2(2 * nodes) }, i);
        }
        for i in 0..30u64 {
            push(
                GeneratorKind::RandomBipartite { left: 3000, right: 20000, min_degree: 32, max_degree: 40, rank: 8 },
                i,
            );
        }
        for i in 0..9u64 {
            push(
                GeneratorKind::RandomBipartite { left: 5000, right: 95000, min_degree: 34, max_degree: 34, rank: 4 },
                i,
            );
        }
        out
    })
}

fn criterion_1() -> Check {
    let corpus = weak_corpus();
    let (mut lo, mut hi) = (usize::MAX, 0);
    for (name, b) in corpus {
        let n = b.n();
        lo = lo.min(n);
        hi = hi.max(n);
        ensure((64..=100_000).contains(&n), || format!("{name}: n = {n} outside [64, 1e5]"))?;
        ensure(b.min_left_degree() >= 2 * ceil_log2(n), || format!("{name}: delta below 2 ceil(log n)"))?;
        let derand = derandomized_weak_split_traced(b).map_err(|e| format!("{name}: derandomized: {e}"))?;
        ensure(weak_valid(b, &derand.coloring), || format!("{name}: derandomized certificate invalid"))?;
        let (c, _) = trim_then_split(b).map_err(|e| format!("{name}: trim: {e}"))?;
        ensure(weak_valid(b, &c), || format!("{name}: trim-then-split certificate invalid"))?;
        let (c, _) = weak_split_speedup(b).map_err(|e| format!("{name}: speedup: {e}"))?;
        ensure(weak_valid(b, &c), || format!("{name}: speedup certificate invalid"))?;
    }
    Ok(format!("{} instances, n in [{lo}, {hi}], 3 solvers, 0 violations", corpus.len()))
}

fn criterion_2() -> Check {
    let mut worst: f64 = 0.0;
    for (name, b) in weak_corpus() {
        let t = derandomized_weak_split_traced(b).map_err(|e| format!("{name}: {e}"))?.trace;
        ensure(t.initial_below_one && t.initial < 1.0, || format!("{name}: initial estimator {}", t.initial))?;
        ensure(t.non_increasing, || format!("{name}: estimator increased"))?;
        ensure(t.values.windows(2).all(|w| w[1] <= w[0]), || format!("{name}: float trace increased"))?;
        ensure(t.final_unsatisfied == 0, || format!("{name}: {} unsatisfied at the end", t.final_unsatisfied))?;
        worst = worst.max(t.initial);
    }
    Ok(format!("{} runs, largest initial estimator {worst:.3e}, traces non-increasing", weak_corpus().len()))
}

fn criterion_3() -> Check {
    let epsilons = [0.1, 0.2, 0.33 - 1e-6];
    let mut runs = 0;
    for i in 0..50usize {
        let (left, delta, rank) = (50 + 5 * i, 64 + 16 * (i % 5), 8 + 8 * (i % 4));
        let right = 2 * left * (delta + 8) / rank;
        let b = bip(
            GeneratorKind::RandomBipartite { left, right, min_degree: delta, max_degree: delta + 8, rank },
            i as u64,
        );
        let (d0, r0) = (b.min_left_degree() as f64, b.rank() as f64);
        for eps in epsilons {
            let run = degree_rank_reduction_one_traced(&b, eps, 5, SplitMode::Deterministic)
                .map_err(|e| format!("instance {i}, eps {eps}: {e}"))?;
            for k in 1..=5 {
                let (dk, rk) = (run.trace[k].0 as f64, run.trace[k].1 as f64);
                let low = ((1.0 - eps) / 2.0).powi(k as i32) * d0 - 2.0;
                let high = ((1.0 + eps) / 2.0).powi(k as i32) * r0 + 3.0;
                ensure(dk > low, || format!("instance {i}, eps {eps}, k {k}: delta {dk} <= {low}"))?;
                ensure(rk < high, || format!("instance {i}, eps {eps}, k {k}: rank {rk} >= {high}"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} runs x 5 iterations within both shrinkage bounds"))
}

fn criterion_4() -> Check {
    let mut count = 0;
    let mut instances: Vec<BipartiteInstance> = Vec::new();
    for r in 2..=64usize {
        // K_{r,8}: every V-node has degree exactly r
        let edges = (0..r).flat_map(|u| (0..8).map(move |v| (u, v))).collect();
        instances.push(BipartiteInstance::new(r, 8, edges).unwrap());
        instances.push(bip(
            GeneratorKind::RandomBipartite { left: 4 * r, right: 48, min_degree: 8, max_degree: 12, rank: r },
            r as u64,
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for b in &instances {
        let r = b.rank();
        if r < 2 {
            continue;
        }
        seen.insert(r);
        let iters = ceil_log2(r);
        let run = degree_rank_reduction_two_traced(b, 0.1, iters, SplitMode::Deterministic)
            .map_err(|e| format!("rank {r}: {e}"))?;
        for j in 1..=iters {
            let expected = run.trace[j - 1].1.div_ceil(2);
            ensure(run.trace[j].1 == expected, || format!("rank {r}: iteration {j} gave {}", run.trace[j].1))?;
        }
        ensure(run.trace[iters].1 == 1, || format!("rank {r}: {} after {iters} iterations", run.trace[iters].1))?;
        count += 1;
    }
    ensure((2..=64).all(|r| seen.contains(&r)), || "some rank in 2..=64 not covered".into())?;
    Ok(format!("{count} instances, ranks 2..=64, rank 1 after ceil(log r) iterations"))
}

fn criterion_5() -> Check {
    // (left, right, delta, rank); the last family has delta >= 2 log n
    let families =
        [(400, 3000, 12, 2), (600, 5000, 18, 3), (1500, 12000, 24, 4), (50, 1000, 12, 1), (100, 2000, 30, 2)];
    let mut count = 0;
    for (f, &(left, right, delta, rank)) in families.iter().enumerate() {
        for s in 0..20u64 {
            let b =
                bip(GeneratorKind::RandomBipartite { left, right, min_degree: delta, max_degree: delta + 2, rank }, s);
            let (d, r) = (b.min_left_degree(), b.rank());
            ensure(d >= 6 * r && d >= 12, || format!("family {f}: fixture has delta {d}, rank {r}"))?;
            let iters = ceil_log2(r);
            let run = degree_rank_reduction_two_traced(&b, 0.1, iters, SplitMode::Deterministic)
                .map_err(|e| format!("family {f}: {e}"))?;
            ensure(run.instance.rank() <= 1, || format!("family {f}: rank {} after reduction", run.instance.rank()))?;
            ensure(run.instance.min_left_degree() >= 2, || {
                format!("family {f}: min U-degree {} after reduction", run.instance.min_left_degree())
            })?;
            let mode = if s % 2 == 0 { SplitMode::Deterministic } else { SplitMode::Randomized };
            let out = weak_split_delta_ge_6r(&b, mode, s).map_err(|e| format!("family {f}: {e}"))?;
            ensure(weak_valid(&b, &out.coloring), || format!("family {f}, seed {s}: certificate invalid"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances: rank 1, min U-degree >= 2, certificates valid"))
}

fn criterion_6() -> Check {
    const SEEDS: u64 = 10_000;
    let mut rates = Vec::new();
    let mut detail = Vec::new();
    for delta in [32usize, 64] {
        let b = bip(
            GeneratorKind::RandomBipartite {
                left: 100,
                right: 25 * delta,
                min_degree: delta,
                max_degree: delta,
                rank: 8,
            },
            delta as u64,
        );
        let (r, n) = (b.rank(), b.n());
        ensure(r <= 8, || "rank above 8".into())?;
        let budget = 64.0 * (r as f64).powi(4) * log2n(n).powi(6);
        let floor = delta.div_ceil(4);
        let (mut unsatisfied, mut within_budget, mut largest) = (0usize, 0u64, 0usize);
        for seed in 0..SEEDS {
            let out = shatter(&b, seed);
            if let Some(dh) = out.residual_min_degree(&b) {
                ensure(dh >= floor, || format!("delta {delta}, seed {seed}: delta_H = {dh} < {floor}"))?;
            }
            unsatisfied += out.unsatisfied_count();
            let size = out.components(&b).iter().map(|c| c.n()).max().unwrap_or(0);
            largest = largest.max(size);
            if size as f64 <= budget {
                within_budget += 1;
            }
        }
        let rate = unsatisfied as f64 / (SEEDS as f64 * b.left_count() as f64);
        let share = within_budget as f64 / SEEDS as f64;
        ensure(share >= 0.999, || format!("delta {delta}: only {share} of runs within the component budget"))?;
        detail.push(format!("delta {delta}: rate {rate:.2e}, largest component {largest}"));
        rates.push(rate);
    }
    ensure(rates[0] > 0.0, || "no unsatisfied node at delta 32, rate fit impossible".into())?;
    // fitted eta from rate ~ exp(-eta delta); geometric decrease means at least halving
    let eta = if rates[1] == 0.0 { f64::INFINITY } else { (rates[0] / rates[1]).ln() / 32.0 };
    ensure(eta >= std::f64::consts::LN_2 / 32.0, || format!("fitted eta {eta:.4} too small"))?;
    Ok(format!("{}; fitted eta {eta:.3}", detail.join("; ")))
}

fn criterion_7() -> Check {
    let config = RandomizedConfig::default();
    let mut retries = 0u32;
    for s in 0..100u64 {
        let b = bip(
            GeneratorKind::RandomBipartite { left: 100, right: 10000, min_degree: 190, max_degree: 200, rank: 2 },
            s,
        );
        let gate = config.gate_constant * (b.rank() as f64 * log2n(b.n())).log2();
        ensure(b.min_left_degree() as f64 >= gate, || format!("seed {s}: fixture misses the gate {gate:.1}"))?;
        let run = randomized_weak_split(&b, s, &config).map_err(|e| format!("seed {s}: {e}"))?;
        ensure(weak_valid(&b, &run.coloring), || format!("seed {s}: certificate invalid"))?;
        retries += run.retries;
    }
    let mean = retries as f64 / 100.0;
    ensure(mean <= 0.1, || format!("mean retries {mean}"))?;
    Ok(format!("100 runs valid at gate constant {}, mean retries {mean}", config.gate_constant))
}

/// Every coloring of each node's incident edges that satisfies the node's constraint
/// gives the node an outgoing edge. A node's out-edges depend only on its incident
/// edges, so this covers every valid splitting.
fn sinkless_exhaustive(g: &SimGraph) -> Result<usize, String> {
    let inst = sinkless_instance(g).map_err(|e| e.to_string())?;
    ensure(inst.rank() <= 2, || format!("rank {}", inst.rank()))?;
    ensure(inst.min_left_degree() >= 3, || format!("min left degree {}", inst.min_left_degree()))?;
    let mut checked = 0;
    for x in 0..g.node_count() {
        let incident: Vec<usize> =
            g.edges().iter().enumerate().filter(|(_, &(a, b))| a == x || b == x).map(|(e, _)| e).collect();
        let own = BipartiteInstance::new(1, g.edge_count(), inst.left_neighbors(x).iter().map(|&e| (0, e)).collect())
            .unwrap();
        for mask in 0u32..1 << incident.len() {
            let mut values = vec![Some(Color::Red); g.edge_count()];
            for (i, &e) in incident.iter().enumerate() {
                values[e] = Some(if mask >> i & 1 == 1 { Color::Blue } else { Color::Red });
            }
            if !weak_unsatisfied(&own, &values).is_empty() {
                continue;
            }
            let o = splitting_to_orientation(g, &own, &TwoColoring { values }).map_err(|e| e.to_string())?;
            ensure(o.arcs.iter().any(|&(t, _)| t == x), || format!("node {x} is a sink under mask {mask:b}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_8() -> Check {
    let mut graphs = 0;
    let mut local = 0;
    for n in 6..=8 {
        for missing in graphs_with_max_degree(n, n - 6) {
            let g = SimGraph::new(n, complement(n, &missing)).unwrap();
            assert!(g.min_degree() >= 5);
            local += sinkless_exhaustive(&g).map_err(|e| format!("n = {n}, missing {missing:?}: {e}"))?;
            graphs += 1;
        }
    }
    let mut splittings = 0;
    for s in 0..500u64 {
        let nodes = 10 + (s as usize % 50);
        let g = graph(GeneratorKind::MinDegreeGraph { nodes, min_degree: 5 + (s as usize % 4) }, s);
        let inst = sinkless_instance(&g).map_err(|e| format!("random {s}: {e}"))?;
        ensure(inst.rank() <= 2 && inst.min_left_degree() >= 3, || format!("random {s}: instance shape"))?;
        for k in 0..3 {
            let c = walk_split(&inst, s * 7 + k).ok_or_else(|| format!("random {s}: no splitting found"))?;
            let o = splitting_to_orientation(&g, &inst, &c).map_err(|e| format!("random {s}: {e}"))?;
            let v = check_sinkless(&g, &o).map_err(|e| e.to_string())?;
            ensure(v.is_valid(), || format!("random {s}: {:?}", v.violations))?;
            splittings += 1;
        }
    }
    Ok(format!(
        "{graphs} graphs on 6..8 nodes ({local} local colorings), 500 random graphs ({splittings} splittings), no sinks"
    ))
}

fn criterion_9() -> Check {
    let mut fixtures: Vec<(String, SimGraph, usize)> = Vec::new();
    for nodes in 81..=84 {
        for s in 0..5 {
            let g = graph(GeneratorKind::NearRegular { nodes, degree: 80 }, s);
            fixtures.push((format!("dense80 n{nodes}/{s}"), g.clone(), 1));
            fixtures.push((format!("dense80 n{nodes}/{s}"), g, 2));
        }
    }
    for nodes in 41..=44 {
        for s in 0..5 {
            fixtures.push((
                format!("dense40 n{nodes}/{s}"),
                graph(GeneratorKind::NearRegular { nodes, degree: 40 }, s),
                1,
            ));
        }
    }
    for degree in [40, 80] {
        for hubs in 1..=5 {
            for s in 0..3 {
                let g = graph(GeneratorKind::Hubs { hubs, leaves: 2 * degree, degree }, s);
                fixtures.push((format!("hubs{degree} x{hubs}/{s}"), g.clone(), 1));
                fixtures.push((format!("hubs{degree} x{hubs}/{s}"), g, 2));
            }
        }
    }
    for (name, g, depth) in &fixtures {
        let delta = g.max_degree();
        ensure(delta == 40 || delta == 80, || format!("{name}: Delta = {delta}"))?;
        let run = coloring_via_splitting(g, 0.2, Some(*depth)).map_err(|e| format!("{name}, r = {depth}: {e}"))?;
        let v = check_proper_coloring(g, &run.coloring).map_err(|e| e.to_string())?;
        ensure(v.is_valid(), || format!("{name}, r = {depth}: {:?}", v.violations.first()))?;
        // leaves are the blocks of Delta* + 1 consecutive colors; re-measure their degree
        let width = run.leaf_max_degree + 1;
        let mut measured = 0;
        for leaf in 0..1usize << depth {
            let keep: Vec<bool> = run.coloring.colors.iter().map(|&c| c / width == leaf).collect();
            measured = measured.max(g.induced(&keep).0.max_degree());
        }
        let used = run.coloring.colors.iter().max().map_or(0, |&c| c + 1);
        let bound = (1usize << depth) * (measured + 1);
        ensure(used <= bound && run.coloring.palette <= (1 << depth) * width, || {
            format!("{name}, r = {depth}: {used} colors, bound {bound}")
        })?;
    }
    Ok(format!("{} runs (Delta 40/80, r = 1/2), palette <= 2^r (Delta* + 1), all proper", fixtures.len()))
}

fn criterion_10() -> Check {
    let mut graphs: Vec<SimGraph> = Vec::new();
    for i in 0..50u64 {
        let nodes = 300 + 24 * i as usize;
        let degree = 32 + 2 * (i as usize % 48);
        graphs.push(graph(GeneratorKind::NearRegular { nodes, degree }, i));
    }
    for i in 0..25u64 {
        let nodes = 200 + 70 * i as usize;
        graphs.push(graph(GeneratorKind::MinDegreeGraph { nodes, min_degree: 8 + i as usize }, i));
    }
    for i in 0..15u64 {
        graphs.push(graph(GeneratorKind::Hubs { hubs: 2 + i as usize, leaves: 400, degree: 60 + 10 * i as usize }, i));
    }
    for i in 0..7usize {
        graphs.push(graph(GeneratorKind::Grid { rows: 10 + i, cols: 20 }, 0));
    }
    graphs.push(graph(GeneratorKind::NearRegular { nodes: 10_000, degree: 64 }, 1));
    graphs.push(graph(GeneratorKind::NearRegular { nodes: 3000, degree: 256 }, 2));
    graphs.push(graph(GeneratorKind::NearRegular { nodes: 2000, degree: 200 }, 3));
    let (mut iterations, mut good, mut calls) = (0usize, 0usize, 0usize);
    for (i, g) in graphs.iter().enumerate() {
        let n = g.node_count();
        ensure(n <= 10_000 && g.max_degree() <= 256, || format!("graph {i}: out of range"))?;
        let run = mis_via_splitting_traced(g, 0.2).map_err(|e| format!("graph {i}: {e}"))?;
        let v = check_mis(g, &run.set.members);
        ensure(v.is_valid(), || format!("graph {i}: {:?}", v.violations.first()))?;
        for &(nodes, maxdeg, size) in &run.stats.greedy_calls {
            ensure(size * (maxdeg + 1) >= nodes, || {
                format!("graph {i}: greedy MIS {size} on {nodes} nodes, Delta {maxdeg}")
            })?;
            calls += 1;
        }
        let floor = 1.0 / (80.0 * log2n(n).powi(3));
        for it in &run.stats.iterations {
            iterations += 1;
            if it.covered_fraction() >= floor {
                good += 1;
            }
        }
    }
    let share = if iterations == 0 { 1.0 } else { good as f64 / iterations as f64 };
    ensure(share >= 0.95, || format!("covered-fraction bound met in only {share:.3} of iterations"))?;
    Ok(format!(
        "{} graphs valid, {calls} greedy calls meet |I| (Delta + 1) >= n, {good}/{iterations} heavy iterations meet the bound",
        graphs.len()
    ))
}

/// `P(Bin(d, 1/c) >= k)` by direct summation.
fn binomial_tail(d: usize, c: usize, k: usize) -> f64 {
    let p = 1.0 / c as f64;
    let mut pmf = (1.0 - p).powi(d as i32);
    let mut tail = 0.0;
    for j in 0..=d {
        if j >= k {
            tail += pmf;
        }
        pmf *= (d - j) as f64 / (j + 1) as f64 * p / (1.0 - p);
    }
    tail
}

fn choose(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn criterion_11() -> Check {
    let mut points = 0;
    for d in 10..=40usize {
        for c in 3..=8usize {
            for tenths in 1..=9usize {
                let lambda = tenths as f64 / 10.0;
                let k = (tenths * d).div_ceil(10);
                let exact = binomial_tail(d, c, k);
                let bound = choose(d, k) / (c as f64).powi(k as i32);
                let t = tail_bounds(d, c, lambda);
                ensure(t.k == k, || format!("d {d}, C' {c}, lambda {lambda}: k {} != {k}", t.k))?;
                ensure(exact <= bound * (1.0 + 1e-12), || {
                    format!("d {d}, C' {c}, lambda {lambda}: {exact} > {bound}")
                })?;
                ensure((t.exact - exact).abs() <= 1e-9 * exact.max(1e-300), || {
                    format!("d {d}, C' {c}, lambda {lambda}: library tail {} vs {exact}", t.exact)
                })?;
                ensure(t.union_holds && (t.union - bound).abs() <= 1e-9 * bound, || {
                    format!("d {d}, C' {c}, lambda {lambda}: library bound {} vs {bound}", t.union)
                })?;
                points += 1;
            }
        }
    }
    let configs = [
        (20usize, 2000usize, 1000usize, 8usize, 0.5f64),
        (30, 2000, 1200, 6, 0.5),
        (40, 3000, 1500, 8, 0.4),
        (10, 4000, 3000, 16, 0.25),
    ];
    let mut runs = 0;
    for i in 0..50usize {
        let (left, right, degree, colors, lambda) = configs[i % configs.len()];
        let b = bip(GeneratorKind::LeftRegular { left, right, degree }, i as u64);
        let out = multicolor_split_iterate(&b, &MulticolorParams::new(colors, lambda), i as u64)
            .map_err(|e| format!("instance {i}: {e}"))?;
        let target = lambda.powi(out.iterations as i32).max(1.0 / (2.0 * log2n(b.n())));
        ensure((out.lambda - target).abs() < 1e-12, || format!("instance {i}: lambda {} != {target}", out.lambda))?;
        ensure(out.coloring.palette <= colors.pow(out.iterations as u32), || format!("instance {i}: palette"))?;
        let v = check_multicolor_splitting(&b, &out.coloring, out.coloring.palette, target, 0)
            .map_err(|e| e.to_string())?;
        ensure(v.is_valid(), || format!("instance {i}: {:?}", v.violations.first()))?;
        runs += 1;
    }
    Ok(format!("{points} grid points exact <= bound; {runs} iterated multicolorings valid"))
}

fn criterion_12() -> Check {
    let trees = [(2usize, 24usize, 2usize), (2, 40, 2), (3, 24, 2), (3, 32, 2)];
    let config = GirthConfig::default();
    for &(depth, u_deg, v_deg) in &trees {
        let b = bip(GeneratorKind::BipartiteTree { depth, u_deg, v_deg }, 0);
        ensure(b.min_left_degree() >= 16, || "tree fixture below delta 16".into())?;
        let det = high_girth_weak_split(&b, SplitMode::Deterministic, 0, &config)
            .map_err(|e| format!("tree {depth}/{u_deg}/{v_deg}, deterministic: {e}"))?;
        ensure(weak_valid(&b, &det.coloring), || "deterministic certificate invalid".into())?;
        for s in 0..5 {
            let run = high_girth_weak_split(&b, SplitMode::Randomized, s, &config)
                .map_err(|e| format!("tree {depth}/{u_deg}/{v_deg}, seed {s}: {e}"))?;
            ensure(weak_valid(&b, &run.coloring), || "randomized certificate invalid".into())?;
        }
    }
    let b = bip(GeneratorKind::BipartiteTree { depth: 3, u_deg: 24, v_deg: 2 }, 0);
    let gap = (0..1000u64).filter(|&s| shatter(&b, s).components(&b).iter().all(|c| residual_gap(&c.instance))).count();
    ensure(gap >= 990, || format!("residual gap held in {gap}/1000 seeds"))?;
    Ok(format!("{} trees valid in both modes, 0 gap violations; residual gap in {gap}/1000 seeds", trees.len()))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v.dedup();
    v
}

fn criterion_13() -> Check {
    let mut cases = 0usize;
    // weak splitting and uniform splits on all instances with 3 + 3 nodes
    for b in all_bipartite(3, 3) {
        for a in assignments(3, 3) {
            let values: Vec<Option<Color>> = a.iter().map(|&x| color_of(x)).collect();
            let c = TwoColoring { values: values.clone() };
            let got = sorted(check_weak_splitting(&b, &c).unwrap().violations.iter().map(|v| v.u).collect());
            ensure(got == weak_unsatisfied(&b, &values), || format!("weak splitting disagrees on {b:?} {a:?}"))?;
            // eps = num / 10: red and blue each within [(1/2 - eps) d, (1/2 + eps) d]
            for num in [1usize, 2, 3, 5] {
                let mut expected = Vec::new();
                for u in 0..3 {
                    let d = b.left_degree(u);
                    let count = |col| b.left_neighbors(u).iter().filter(|&&v| values[v] == Some(col)).count();
                    let ok = |x: usize| 10 * 2 * x + 2 * num * d >= 10 * d && 10 * 2 * x <= 10 * d + 2 * num * d;
                    if !(ok(count(Color::Red)) && ok(count(Color::Blue))) {
                        expected.push(u);
                    }
                }
                let got = check_uniform_split(&b, &c, num as f64 / 10.0, None).unwrap();
                let got = sorted(got.violations.iter().map(|v| v.u).collect());
                ensure(got == expected, || format!("uniform split disagrees at eps {num}/10"))?;
            }
            cases += 1;
        }
    }
    // multicolor conditions on all instances with 2 + 4 nodes
    for b in all_bipartite(2, 4) {
        for a in assignments(4, 3) {
            let mc = MultiColoring { colors: a.clone(), palette: 3 };
            for colors in [2usize, 3] {
                // lambda = num / den, limit ceil(lambda d)
                for (num, den) in [(1usize, 3usize), (1, 2), (3, 10), (2, 3), (1, 1)] {
                    let mut expected = Vec::new();
                    for (v, &x) in a.iter().enumerate() {
                        if x >= colors {
                            expected.push(MulticolorViolation::OutOfPalette { v, color: x });
                        }
                    }
                    for u in 0..2 {
                        let d = b.left_degree(u);
                        let limit = (num * d).div_ceil(den);
                        for color in 0..3 {
                            let count = b.left_neighbors(u).iter().filter(|&&v| a[v] == color).count();
                            if count > limit {
                                expected.push(MulticolorViolation::Overloaded { u, color, count, limit });
                            }
                        }
                    }
                    let got = check_multicolor_splitting(&b, &mc, colors, num as f64 / den as f64, 0).unwrap();
                    ensure(got.violations == expected, || format!("multicolor disagrees on {a:?}, {num}/{den}"))?;
                }
                for (deg_t, col_t) in [(0usize, 2usize), (2, 2), (3, 3), (1, 1)] {
                    let expected: Vec<usize> = (0..2)
                        .filter(|&u| {
                            let seen = sorted(b.left_neighbors(u).iter().map(|&v| a[v]).collect());
                            b.left_degree(u) >= deg_t && seen.len() < col_t
                        })
                        .collect();
                    let got = check_weak_multicolor(&b, &mc, deg_t as f64, col_t as f64).unwrap();
                    let got: Vec<usize> = got.violations.iter().map(|v| v.u).collect();
                    ensure(got == expected, || "weak multicolor disagrees".into())?;
                }
            }
            cases += 1;
        }
    }
    // orientations on all graphs with at most 5 nodes
    for n in 1..=5 {
        for g in all_graphs(n) {
            let m = g.edge_count();
            for mask in 0u32..1 << m {
                let arcs: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(e, &(a, b))| if mask >> e & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                let o = splitsim::degree::EdgeOrientation { arcs: arcs.clone() };
                let sinks: Vec<SinklessViolation> = (0..n)
                    .filter(|&v| g.degree(v) > 0 && !arcs.iter().any(|&(t, _)| t == v))
                    .map(SinklessViolation::Sink)
                    .collect();
                ensure(check_sinkless(&g, &o).unwrap().violations == sinks, || "sinkless disagrees".into())?;
                let report = check_orientation_discrepancy(&g, &o).unwrap();
                for v in 0..n {
                    let out = arcs.iter().filter(|&&(t, _)| t == v).count() as i64;
                    let inn = arcs.iter().filter(|&&(_, h)| h == v).count() as i64;
                    ensure(report.per_node[v] as i64 == (out - inn).abs(), || "discrepancy disagrees".into())?;
                }
                cases += 1;
            }
        }
    }
    // colorings and independent sets on all graphs with at most 6 nodes
    for n in 1..=6 {
        for g in all_graphs(n) {
            if n <= 5 {
                for a in assignments(n, 3) {
                    let mut expected: Vec<ColoringViolation> = Vec::new();
                    for (v, &c) in a.iter().enumerate() {
                        if c >= 2 {
                            expected.push(ColoringViolation::OutOfPalette { v, color: c });
                        }
                    }
                    for &(x, y) in g.edges() {
                        if a[x] == a[y] {
                            expected.push(ColoringViolation::Conflict { a: x, b: y });
                        }
                    }
                    let pc = ProperColoring { colors: a.clone(), palette: 2 };
                    ensure(check_proper_coloring(&g, &pc).unwrap().violations == expected, || {
                        "coloring disagrees".into()
                    })?;
                    cases += 1;
                }
            }
            for mask in 0u32..1 << n {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let inside = |v: usize| mask >> v & 1 == 1;
                let mut expected = Vec::new();
                for &(x, y) in g.edges() {
                    if inside(x) && inside(y) {
                        expected.push(MisViolation::Adjacent { a: x, b: y });
                    }
                }
                for v in 0..n {
                    if !inside(v) && !g.neighbors(v).iter().any(|&w| inside(w)) {
                        expected.push(MisViolation::Uncovered(v));
                    }
                }
                ensure(check_mis(&g, &set).violations == expected, || format!("MIS disagrees on {set:?}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} exhaustive cases, all checkers agree with the definitions"))
}

fn criterion_14() -> Check {
    let rb = GeneratorKind::RandomBipartite { left: 60, right: 120, min_degree: 16, max_degree: 20, rank: 12 };
    let configs = vec![
        (Algorithm::Derandomized, rb.clone()),
        (Algorithm::Speedup, rb.clone()),
        (Algorithm::RandomWeak, rb.clone()),
        (
            Algorithm::Randomized(RandomizedConfig::default()),
            GeneratorKind::RandomBipartite { left: 100, right: 10000, min_degree: 190, max_degree: 200, rank: 2 },
        ),
        (
            Algorithm::DeltaGe6r { randomized: true },
            GeneratorKind::RandomBipartite { left: 60, right: 700, min_degree: 16, max_degree: 20, rank: 2 },
        ),
        (Algorithm::Shatter { derandomized: false }, rb),
        (Algorithm::HighGirth { randomized: true }, GeneratorKind::BipartiteTree { depth: 2, u_deg: 24, v_deg: 2 }),
        (Algorithm::Mis { eps: 0.2 }, GeneratorKind::NearRegular { nodes: 300, degree: 48 }),
        (Algorithm::Coloring { eps: 0.2, depth: Some(1) }, GeneratorKind::NearRegular { nodes: 81, degree: 80 }),
        (Algorithm::Sinkless, GeneratorKind::MinDegreeGraph { nodes: 80, min_degree: 28 }),
        (
            Algorithm::Multicolor { colors: 8, lambda: 0.5 },
            GeneratorKind::LeftRegular { left: 20, right: 2000, degree: 1000 },
        ),
    ];
    for (algorithm, generator) in configs.iter().cloned() {
        let name = algorithm.name();
        let config = ExperimentConfig { algorithm, generator, seed: 17, reps: 3, certificates: true };
        let first = run_experiment(&config);
        let second = run_experiment(&config);
        ensure(first.to_json() == second.to_json(), || format!("{name}: JSON reports differ"))?;
        ensure(first.to_csv().unwrap() == second.to_csv().unwrap(), || format!("{name}: CSV reports differ"))?;
        ensure(first.runs.iter().all(|r| r.verdict != RunVerdict::Error), || {
            format!("{name}: {:?}", first.runs.iter().find_map(|r| r.error.clone()))
        })?;
    }
    Ok(format!("{} configs replay byte-identical (JSON and CSV)", configs.len()))
}

type Criterion = (&'static str, fn() -> Check);

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        ("weak-splitting soundness", criterion_1),
        ("estimator guarantee", criterion_2),
        ("degree-rank shrinkage", criterion_3),
        ("rank collapse", criterion_4),
        ("delta >= 6r endgame", criterion_5),
        ("shattering statistics", criterion_6),
        ("randomized end-to-end", criterion_7),
        ("sinkless pipeline", criterion_8),
        ("coloring reduction", criterion_9),
        ("MIS reduction", criterion_10),
        ("multicolor", criterion_11),
        ("high girth", criterion_12),
        ("checker agreement", criterion_13),
        ("determinism", criterion_14),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
