mod common;

use common::{layout_crossings, min_over_all_layouts, pairwise_inversions};
use panelcross::analysis::random_instance;
use panelcross::io::{render_svg, RenderOptions};
use panelcross::layout::{
    brute_force_pcr, count_layout_crossings, forced_crossings, naive_layout, optimal_layout, pcr, redundant_crossings,
};
use panelcross::model::{layout_is_valid, CombinatorialLayout, OpdInstance};

/// Nine subjects over four tests and seven categories. The naive layout
/// wastes one crossing in the top category of the first test.
fn nine_subjects() -> OpdInstance {
    OpdInstance::from_matrix(
        7,
        vec![
            vec![1, 0, 0, 0, 2, 1, 3, 2, 3],
            vec![1, 1, 2, 2, 2, 2, 5, 4, 4],
            vec![1, 3, 2, 2, 2, 4, 5, 4, 6],
            vec![3, 5, 3, 4, 2, 5, 6, 4, 6],
        ],
    )
    .unwrap()
}

fn caption(svg: &str) -> u64 {
    let start = svg.find("crossings: ").unwrap() + "crossings: ".len();
    svg[start..].split(|c: char| !c.is_ascii_digit()).next().unwrap().parse().unwrap()
}

#[test]
fn reversal_of_three() {
    assert_eq!(pairwise_inversions(&[0, 1, 2], &[2, 1, 0]), 3);
    let inst = OpdInstance::from_matrix(1, vec![vec![0; 3]; 2]).unwrap();
    let layout = CombinatorialLayout::new(vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
    assert_eq!(count_layout_crossings(&inst, &layout).unwrap().total, 3);
}

#[test]
fn catch_up_and_break_away_costs_one() {
    let inst = OpdInstance::from_trajectories(&["c1", "c2"], &[("a", &["c1", "c1", "c2"]), ("b", &["c2", "c1", "c1"])])
        .unwrap();
    assert_eq!(min_over_all_layouts(&inst), 1);
    let layout = optimal_layout(&inst).unwrap();
    assert_eq!(layout_crossings(layout.pis()), 1);
    assert_eq!(forced_crossings(&inst).unwrap().strong, 0);
}

#[test]
fn optimal_matches_full_enumeration() {
    for seed in 0..150 {
        let (n, k, m) = (1 + seed as usize % 4, 1 + seed as usize % 3, 1 + (seed / 3) as usize % 3);
        let inst = random_instance(n, k, m, 1000 + seed).unwrap();
        let layout = optimal_layout(&inst).unwrap();
        assert!(layout_is_valid(&inst, &layout).unwrap());
        let expected = min_over_all_layouts(&inst);
        assert_eq!(layout_crossings(layout.pis()), expected, "seed {seed}");
        assert_eq!(pcr(&inst).unwrap(), expected);
        assert_eq!(brute_force_pcr(&inst).unwrap(), expected);
        assert_eq!(forced_crossings(&inst).unwrap().total(), expected);
    }
}

#[test]
fn naive_layout_of_nine_subjects_has_one_redundant_crossing() {
    let inst = nine_subjects();
    let naive = naive_layout(&inst).unwrap();
    assert_eq!(layout_crossings(naive.pis()), 14);
    assert_eq!(pcr(&inst).unwrap(), 13);
    assert_eq!(brute_force_pcr(&inst).unwrap(), 13);
    assert!(!redundant_crossings(&inst, &naive).unwrap().is_empty());

    // swap the two subjects in the top category of the first test
    let mut pis = naive.pis().to_vec();
    let (a, b) = (pis[0].iter().position(|&s| s == 6).unwrap(), pis[0].iter().position(|&s| s == 8).unwrap());
    pis[0].swap(a, b);
    let fixed = CombinatorialLayout::new(pis).unwrap();
    assert!(layout_is_valid(&inst, &fixed).unwrap());
    assert_eq!(layout_crossings(fixed.pis()), 13);
    assert!(redundant_crossings(&inst, &fixed).unwrap().is_empty());
}

#[test]
fn captions_differ_by_the_removed_crossing() {
    let inst = nine_subjects();
    let options = RenderOptions::default();
    let naive = naive_layout(&inst).unwrap();
    let optimal = optimal_layout(&inst).unwrap();
    let (a, b) = (
        caption(&render_svg(&inst, &naive, &options).unwrap()),
        caption(&render_svg(&inst, &optimal, &options).unwrap()),
    );
    let direct = layout_crossings(naive.pis()) - layout_crossings(optimal.pis());
    assert_eq!(a - b, direct);
    assert_eq!(a - b, 1);
}
