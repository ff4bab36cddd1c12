//! Reference computations shared by the integration tests and the
//! acceptance runner. Everything here is written from the definitions and
//! avoids the library's algorithms.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use panelcross::layout::pcr;
use panelcross::model::OpdInstance;
use panelcross::sigma::BipartiteGraph;
use panelcross::tiles::ItemSet;

/// Pairs ordered differently by two permutations, by checking every pair.
pub fn pairwise_inversions(a: &[usize], b: &[usize]) -> u64 {
    let pos = |p: &[usize]| {
        let mut out = vec![0; p.len()];
        for (i, &s) in p.iter().enumerate() {
            out[s] = i;
        }
        out
    };
    let (pa, pb) = (pos(a), pos(b));
    let n = a.len();
    let mut count = 0;
    for x in 0..n {
        for y in x + 1..n {
            if (pa[x] < pa[y]) != (pb[x] < pb[y]) {
                count += 1;
            }
        }
    }
    count
}

/// Every category-consistent permutation at test `i`, sigma-lowest first.
fn valid_permutations(inst: &OpdInstance, i: usize) -> Vec<Vec<usize>> {
    let sigma = inst.sigma().expect("oracle needs sigma");
    let blocks: Vec<Vec<usize>> = sigma
        .order()
        .iter()
        .map(|&c| (0..inst.num_subjects()).filter(|&s| inst.tests()[i][s] == c).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    if blocks.is_empty() {
        return vec![vec![]];
    }
    blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect()
}

/// Minimum crossings over every complete layout, enumerated one by one.
/// Only for tiny instances.
pub fn min_over_all_layouts(inst: &OpdInstance) -> u64 {
    let layers: Vec<Vec<Vec<usize>>> = (0..inst.num_timestamps()).map(|i| valid_permutations(inst, i)).collect();
    layers
        .iter()
        .multi_cartesian_product()
        .map(|pis| pis.windows(2).map(|w| pairwise_inversions(w[0], w[1])).sum::<u64>())
        .min()
        .expect("at least one layout")
}

/// Calls `f` on every `(m+1) × n` matrix over `k` categories.
pub fn for_each_matrix(n: usize, k: usize, m: usize, mut f: impl FnMut(Vec<Vec<usize>>)) {
    let cells = n * (m + 1);
    let total = (k as u64).pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        let mut tests = vec![vec![0; n]; m + 1];
        for cell in 0..cells {
            tests[cell / n][cell % n] = (c % k as u64) as usize;
            c /= k as u64;
        }
        f(tests);
    }
}

/// Largest `pcr` over every instance of the given size.
pub fn max_pcr_exhaustive(n: usize, k: usize, m: usize) -> u64 {
    let mut best = 0;
    for_each_matrix(n, k, m, |tests| {
        best = best.max(pcr(&OpdInstance::from_matrix(k, tests).unwrap()).unwrap());
    });
    best
}

/// Exact mean of `pcr` over every instance of the given size.
pub fn mean_pcr_exhaustive(n: usize, k: usize, m: usize) -> BigRational {
    let (mut sum, mut count) = (0u64, 0u64);
    for_each_matrix(n, k, m, |tests| {
        sum += pcr(&OpdInstance::from_matrix(k, tests).unwrap()).unwrap();
        count += 1;
    });
    BigRational::new(BigInt::from(sum), BigInt::from(count))
}

/// Per-pair expectation as a sum over the position of the first level
/// step, times `C(n,2)`.
pub fn expected_pcr_by_sum(n: usize, k: usize, m: usize) -> BigRational {
    let one = BigRational::from_integer(BigInt::from(1));
    let inv_k = BigRational::new(BigInt::from(1), BigInt::from(k));
    let q = &one - &inv_k;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut total = BigRational::from_integer(BigInt::from(0));
    let mut power = one.clone();
    for i in 0..m {
        total += &q * &q * &half * &power * BigRational::from_integer(BigInt::from(m - i));
        power *= &inv_k;
    }
    total * BigRational::from_integer(BigInt::from(n * n.saturating_sub(1) / 2))
}

/// Every composition of `n` into `k` non-negative parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Largest `pcr` over every second test, with the first test split into
/// blocks of the given sizes.
pub fn two_test_max(parts: &[usize]) -> u64 {
    let k = parts.len();
    let n: usize = parts.iter().sum();
    let first: Vec<usize> = parts.iter().enumerate().flat_map(|(c, &a)| std::iter::repeat_n(c, a)).collect();
    let mut best = 0;
    for second in (0..n).map(|_| 0..k).multi_cartesian_product() {
        let inst = OpdInstance::from_matrix(k, vec![first.clone(), second]).unwrap();
        best = best.max(pcr(&inst).unwrap());
    }
    if n == 0 {
        return 0;
    }
    best
}

/// Two-layer crossing number: every order of each side, count crossing
/// edge pairs (edges sharing an endpoint do not cross).
pub fn bipartite_crossing_number(graph: &BipartiteGraph) -> u64 {
    let edges = graph.oriented_edges().unwrap();
    let mut best = u64::MAX;
    for left in (0..graph.left).permutations(graph.left) {
        for right in (graph.left..graph.left + graph.right).permutations(graph.right) {
            let lp = |v: usize| left.iter().position(|&x| x == v).unwrap();
            let rp = |v: usize| right.iter().position(|&x| x == v).unwrap();
            let mut count = 0;
            for (i, &(a, b)) in edges.iter().enumerate() {
                for &(c, d) in &edges[i + 1..] {
                    let (x, y) = (lp(a) as i64 - lp(c) as i64, rp(b) as i64 - rp(d) as i64);
                    if x * y < 0 {
                        count += 1;
                    }
                }
            }
            best = best.min(count);
        }
    }
    best
}

/// Every simple bipartite graph on `left + right` vertices.
pub fn all_bipartite_graphs(left: usize, right: usize) -> Vec<BipartiteGraph> {
    let slots: Vec<(usize, usize)> = (0..left).cartesian_product(left..left + right).collect();
    (0..1u32 << slots.len())
        .map(|mask| {
            let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            BipartiteGraph::new(left, right, edges)
        })
        .collect()
}

/// Learning-space axioms checked straight from their statement.
pub struct AxiomCheck {
    pub smooth: bool,
    pub consistent: bool,
    pub has_ends: bool,
}

fn set(bits: u32) -> ItemSet {
    (0..32).filter(|b| bits >> b & 1 == 1).collect()
}

/// `states` as bitmasks over `0..domain`.
pub fn axioms(domain: usize, states: &[u32]) -> AxiomCheck {
    let contains = |s: u32| states.contains(&s);
    let full = (1u32 << domain) - 1;
    let has_ends = contains(0) && contains(full);
    // a chain from k to l exists iff, by subsets of l \ k in size order,
    // some one-item-smaller reachable state leads to each reachable one
    let chain = |k: u32, l: u32| {
        let diff = l & !k;
        let items: Vec<u32> = (0..domain as u32).filter(|b| diff >> b & 1 == 1).collect();
        let mut reachable = std::collections::HashSet::from([k]);
        for size in 1..=items.len() {
            for pick in items.iter().combinations(size) {
                let s = pick.iter().fold(k, |acc, &&b| acc | 1 << b);
                if contains(s) && pick.iter().any(|&&b| reachable.contains(&(s & !(1 << b)))) {
                    reachable.insert(s);
                }
            }
        }
        reachable.contains(&l)
    };
    let mut smooth = true;
    let mut consistent = true;
    for &k in states {
        for &l in states {
            if k & !l != 0 || k == l {
                continue;
            }
            smooth &= chain(k, l);
            for q in 0..domain as u32 {
                if contains(k | 1 << q) && !contains(l | 1 << q) {
                    consistent = false;
                }
            }
        }
    }
    AxiomCheck { smooth, consistent, has_ends }
}

pub fn itemsets(states: &[u32]) -> Vec<ItemSet> {
    states.iter().map(|&s| set(s)).collect()
}

/// A random shortest walk in the cube from `from` to `to`: flip the
/// differing bits in a random order.
pub fn cube_walk(from: u32, to: u32, rng: &mut impl rand::Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut bits: Vec<u32> = (0..32).filter(|b| (from ^ to) >> b & 1 == 1).collect();
    bits.shuffle(rng);
    let mut walk = vec![from as usize];
    let mut cur = from;
    for b in bits {
        cur ^= 1 << b;
        walk.push(cur as usize);
    }
    walk
}

/// Crossings between two consecutive tests counted from positions alone.
pub fn layout_crossings(pis: &[Vec<usize>]) -> u64 {
    pis.windows(2).map(|w| pairwise_inversions(&w[0], &w[1])).sum()
}
