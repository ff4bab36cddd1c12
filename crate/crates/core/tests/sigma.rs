mod common;

use std::collections::BTreeMap;

use common::{all_bipartite_graphs, bipartite_crossing_number};
use itertools::Itertools;
use panelcross::analysis::random_instance;
use panelcross::layout::pcr;
use panelcross::model::{OpdInstance, SigmaOrdering};
use panelcross::sigma::{
    bipartite_reduction, compute_tables, export_ilp, objective_for_sigma, optimal_sigma_exact, parse_lp,
    BipartiteGraph, LpProblem, PairKey, SEARCH_BUDGET,
};

fn three() -> OpdInstance {
    OpdInstance::from_trajectories(&["c1", "c2", "c3"], &[("a", &["c1", "c3"]), ("b", &["c2", "c2"])]).unwrap()
}

fn order(labels: &[usize]) -> SigmaOrdering {
    SigmaOrdering::from_order(labels.to_vec()).unwrap()
}

/// Binary assignment described by an order: `x_i_j` is "i below j", and
/// each `y` is set exactly when its comparisons disagree.
fn assignment(problem: &LpProblem, sigma: &SigmaOrdering) -> BTreeMap<String, i64> {
    let below = |i: usize, j: usize| sigma.rank(i) < sigma.rank(j);
    problem
        .binaries
        .iter()
        .map(|name| {
            let p: Vec<usize> = name[2..].split('_').map(|s| s.parse().unwrap()).collect();
            let v = match p.as_slice() {
                [i, j] => below(*i, *j),
                [a, b, c, d] => below(*a, *b) != below(*c, *d),
                _ => panic!("unexpected variable {name}"),
            };
            (name.clone(), v as i64)
        })
        .collect()
}

#[test]
fn worked_example_single_key() {
    let tables = compute_tables(&three());
    assert_eq!(tables.entries().len(), 1);
    let (key, counts) = tables.entries().iter().next().unwrap();
    assert_eq!(*key, PairKey::normalized((0, 1), (2, 1)));
    assert_eq!((counts.sc, counts.wc), (1, 0));
}

#[test]
fn worked_example_orders() {
    let inst = three();
    let tables = compute_tables(&inst);
    assert_eq!(pcr(&inst.with_sigma(order(&[1, 0, 2])).unwrap()).unwrap(), 0);
    assert_eq!(pcr(&inst.with_sigma(order(&[0, 1, 2])).unwrap()).unwrap(), 1);
    let mut optima = Vec::new();
    for o in (0..3).permutations(3) {
        let sigma = order(&o);
        let value = pcr(&inst.with_sigma(sigma.clone()).unwrap()).unwrap();
        assert_eq!(objective_for_sigma(&tables, &sigma), value);
        if value == 0 {
            optima.push(o);
        }
    }
    assert!(optima.contains(&vec![1, 0, 2]) && optima.contains(&vec![2, 0, 1]));
    let best = optimal_sigma_exact(&inst, SEARCH_BUDGET).unwrap();
    assert_eq!(best.objective, 0);
    assert!(optima.contains(&best.sigma.order().to_vec()));
}

#[test]
fn exact_search_beats_every_order() {
    for seed in 0..60 {
        let inst = random_instance(5, 2 + seed as usize % 4, 1 + seed as usize % 3, seed).unwrap();
        let k = inst.num_categories();
        let best = optimal_sigma_exact(&inst, SEARCH_BUDGET).unwrap();
        let brute = (0..k).permutations(k).map(|o| pcr(&inst.with_sigma(order(&o)).unwrap()).unwrap()).min().unwrap();
        assert_eq!(best.objective, brute, "seed {seed}");
        assert_eq!(pcr(&inst.with_sigma(best.sigma).unwrap()).unwrap(), brute);
    }
}

#[test]
fn lp_worked_example() {
    let text = export_ilp(&compute_tables(&three()), 3);
    assert!(text.contains(" obj: 1 y_0_1_2_1"));
    let problem = parse_lp(&text).unwrap();
    assert_eq!(problem.binaries.iter().filter(|v| v.starts_with("x_")).count(), 6);
    assert_eq!(problem.binaries.iter().filter(|v| v.starts_with("y_")).count(), 1);
    assert_eq!(problem.evaluate(&assignment(&problem, &order(&[1, 0, 2]))), Some(0));
}

#[test]
fn lp_value_at_every_order_is_the_crossing_number() {
    for seed in 0..25 {
        let inst = random_instance(4, 4, 2, 500 + seed).unwrap();
        let problem = parse_lp(&export_ilp(&compute_tables(&inst), 4)).unwrap();
        for o in (0..4).permutations(4) {
            let sigma = order(&o);
            let expected = pcr(&inst.with_sigma(sigma.clone()).unwrap()).unwrap() as i64;
            assert_eq!(problem.evaluate(&assignment(&problem, &sigma)), Some(expected));
        }
    }
}

#[test]
fn lp_optimum_over_all_binary_points() {
    // small enough to solve by enumerating every x, with y at its cheapest
    for seed in 0..10 {
        let inst = random_instance(4, 3, 2, 900 + seed).unwrap();
        let problem = parse_lp(&export_ilp(&compute_tables(&inst), 3)).unwrap();
        let xs: Vec<&String> = problem.binaries.iter().filter(|v| v.starts_with("x_")).collect();
        let ys: Vec<&String> = problem.binaries.iter().filter(|v| v.starts_with("y_")).collect();
        let mut best: Option<i64> = None;
        for xbits in 0..1u32 << xs.len() {
            for ybits in 0..1u32 << ys.len() {
                let values: BTreeMap<String, i64> = xs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| ((*v).clone(), (xbits >> i & 1) as i64))
                    .chain(ys.iter().enumerate().map(|(i, v)| ((*v).clone(), (ybits >> i & 1) as i64)))
                    .collect();
                if let Some(v) = problem.evaluate(&values) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        let exact = optimal_sigma_exact(&inst, SEARCH_BUDGET).unwrap().objective as i64;
        assert_eq!(best, Some(exact), "seed {seed}");
    }
}

#[test]
fn k22_crossing_number() {
    let g = BipartiteGraph::new(2, 2, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    let expected = bipartite_crossing_number(&g);
    assert_eq!(expected, 1);
    assert_eq!(optimal_sigma_exact(&bipartite_reduction(&g).unwrap(), SEARCH_BUDGET).unwrap().objective, expected);
}

#[test]
fn reduction_on_small_bipartite_graphs() {
    for (l, r) in [(1, 3), (2, 2), (2, 3)] {
        for g in all_bipartite_graphs(l, r) {
            let inst = bipartite_reduction(&g).unwrap();
            let got = optimal_sigma_exact(&inst, SEARCH_BUDGET).unwrap().objective;
            assert_eq!(got, bipartite_crossing_number(&g), "{g:?}");
        }
    }
}
