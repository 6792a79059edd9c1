mod common;

use common::*;
use proptest::prelude::*;
use splitsim::degree::{degree_rank_reduction_two, directed_degree_split, SplitMode};
use splitsim::graph::{log2n, BipartiteInstance, SimGraph};
use splitsim::harness::GeneratorKind;
use splitsim::reductions::split_window;
use splitsim::verify::{check_orientation_discrepancy, check_uniform_split, check_weak_splitting};
use splitsim::weak::{derandomized_weak_split_traced, Color, Estimator, TwoColoring};

/// Small bipartite instances with every U-node of degree at least one.
fn small_instance() -> impl Strategy<Value = BipartiteInstance> {
    (1usize..7, 1usize..10).prop_flat_map(|(l, r)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), r), l).prop_map(move |rows| {
            let mut edges = Vec::new();
            for (u, row) in rows.iter().enumerate() {
                let mut any = false;
                for (v, &on) in row.iter().enumerate() {
                    if on {
                        edges.push((u, v));
                        any = true;
                    }
                }
                if !any {
                    edges.push((u, u % r));
                }
            }
            BipartiteInstance::new(l, r, edges).unwrap()
        })
    })
}

fn colors(len: usize) -> impl Strategy<Value = Vec<Option<Color>>> {
    proptest::collection::vec((0usize..3).prop_map(color_of), len)
}

proptest! {
    #[test]
    fn estimator_choice_never_increases_the_total(b in small_instance(), order_seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..b.right_count()).collect();
        let k = order.len();
        order.rotate_left((order_seed as usize) % k);
        let mut e = Estimator::new(&b);
        let mut values = vec![None; b.right_count()];
        let started_below_one = e.below_one();
        for &v in &order {
            let before = e.total_numerator().clone();
            let chosen = e.choose(&b, v);
            let mut other = e.clone();
            other.apply(&b, v, if chosen == Color::Red { Color::Blue } else { Color::Red });
            e.apply(&b, v, chosen);
            prop_assert!(e.total_numerator() <= &before);
            prop_assert!(e.total_numerator() <= other.total_numerator());
            values[v] = Some(chosen);
        }
        // once every variable is fixed each unsatisfied U-node contributes exactly 1
        let unsatisfied = weak_unsatisfied(&b, &values).len();
        prop_assert_eq!(e.total(), unsatisfied as f64);
        if started_below_one {
            prop_assert_eq!(unsatisfied, 0);
        }
    }

    #[test]
    fn derandomized_split_is_sound(left in 5usize..40, extra in 0usize..200, slack in 0usize..6, seed in any::<u64>()) {
        let right = 2 * left + extra;
        let degree = (2.0 * log2n(left + right)).ceil() as usize + slack;
        prop_assume!(degree <= right);
        let b = bip(GeneratorKind::LeftRegular { left, right, degree }, seed);
        let out = derandomized_weak_split_traced(&b).unwrap();
        prop_assert!(out.trace.non_increasing);
        prop_assert!(check_weak_splitting(&b, &out.coloring).unwrap().is_valid());
    }

    #[test]
    fn euler_split_has_discrepancy_at_most_one(
        n in 2usize..20,
        raw in proptest::collection::vec((any::<usize>(), any::<usize>()), 0..60),
        eps in 0.01f64..1.0,
    ) {
        let edges: Vec<(usize, usize)> = raw
            .iter()
            .map(|&(a, b)| {
                let a = a % n;
                let b = (a + 1 + b % (n - 1)) % n;
                (a.min(b), a.max(b))
            })
            .collect();
        let g = SimGraph::multigraph(n, edges).unwrap();
        let (o, _) = directed_degree_split(&g, eps).unwrap();
        let report = check_orientation_discrepancy(&g, &o).unwrap();
        prop_assert!(report.mismatched.is_empty());
        for v in 0..n {
            prop_assert_eq!(report.per_node[v], g.degree(v) % 2);
        }
    }

    #[test]
    fn reduction_two_halves_variable_degrees(b in small_instance(), iterations in 1usize..3) {
        let (out, _) = degree_rank_reduction_two(&b, 0.1, iterations, SplitMode::Deterministic).unwrap();
        for v in 0..b.right_count() {
            let mut d = b.right_degree(v);
            for _ in 0..iterations {
                d = d.div_ceil(2);
            }
            prop_assert_eq!(out.right_degree(v), d);
        }
        prop_assert!(out.edges().iter().all(|&(u, v)| b.has_edge(u, v)));
    }

    #[test]
    fn weak_checker_matches_definition(b in small_instance(), seed in any::<u64>()) {
        let values: Vec<Option<Color>> = (0..b.right_count())
            .map(|v| color_of(((seed >> (2 * (v % 32))) % 3) as usize))
            .collect();
        let got: Vec<usize> = check_weak_splitting(&b, &TwoColoring { values: values.clone() })
            .unwrap()
            .violations
            .iter()
            .map(|x| x.u)
            .collect();
        prop_assert_eq!(got, weak_unsatisfied(&b, &values));
    }

    #[test]
    fn uniform_checker_matches_definition(b in small_instance(), values in colors(9), eps in 0.05f64..0.5) {
        let values: Vec<Option<Color>> = values[..b.right_count()].iter().map(|c| c.or(Some(Color::Blue))).collect();
        let verdict = check_uniform_split(&b, &TwoColoring { values: values.clone() }, eps, None).unwrap();
        let expected = (0..b.left_count()).all(|u| {
            let d = b.left_degree(u);
            let red = b.left_neighbors(u).iter().filter(|&&v| values[v] == Some(Color::Red)).count();
            match split_window(d, eps) {
                Some((lo, hi)) => (lo..=hi).contains(&red),
                None => false,
            }
        });
        prop_assert_eq!(verdict.is_valid(), expected);
    }

    #[test]
    fn split_window_is_the_set_of_balanced_counts(d in 1usize..300, eps in 0.001f64..0.5) {
        let lo = (0.5 - eps) * d as f64 - 1e-9;
        let hi = (0.5 + eps) * d as f64 + 1e-9;
        let fits = |k: usize| (lo..=hi).contains(&(k as f64)) && (lo..=hi).contains(&((d - k) as f64));
        let oracle: Vec<usize> = (0..=d).filter(|&k| fits(k)).collect();
        match split_window(d, eps) {
            Some((a, b)) => {
                prop_assert_eq!(a + b, d);
                prop_assert_eq!(oracle, (a..=b).collect::<Vec<_>>());
            }
            None => prop_assert!(oracle.is_empty()),
        }
    }
}
