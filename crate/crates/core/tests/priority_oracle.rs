//! Priority minimisation against exhaustive search.
mod common;

use common::{random_dvpa, random_lasso, SMALL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairvpa::priority::{
    classification_equivalent, compress, min_priorities, stair_index, PriorityGraph,
};
use stairvpa::{accepts, AcceptanceKind};

/// Vertex sets on which some cycle visits every member, by transitive
/// closure restricted to the set.
fn cyclic_sets(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        let mut reach = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if mask & (1 << a) != 0 && mask & (1 << b) != 0 {
                reach[a][b] = true;
            }
        }
        for &k in &members {
            for &i in &members {
                for &j in &members {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        if members
            .iter()
            .all(|&i| members.iter().all(|&j| reach[i][j]))
        {
            out.push(members);
        }
    }
    out
}

/// Smallest `k` such that labels from a window of `k` consecutive values
/// reproduce the parity of the maximum on every cyclic set.
fn brute_min_count(n: usize, sets: &[Vec<usize>], pi: &[u32]) -> u32 {
    let parity: Vec<u32> = sets
        .iter()
        .map(|s| s.iter().map(|&v| pi[v]).max().unwrap() % 2)
        .collect();
    // sets are checked once their last member is labelled
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        closing[*s.last().unwrap()].push(i);
    }
    fn fill(
        v: usize,
        labels: &mut Vec<u32>,
        domain: &[u32],
        sets: &[Vec<usize>],
        closing: &[Vec<usize>],
        parity: &[u32],
    ) -> bool {
        if v == labels.len() {
            return true;
        }
        for &l in domain {
            labels[v] = l;
            let ok = closing[v]
                .iter()
                .all(|&i| sets[i].iter().map(|&w| labels[w]).max().unwrap() % 2 == parity[i]);
            if ok && fill(v + 1, labels, domain, sets, closing, parity) {
                return true;
            }
        }
        false
    }
    for k in 1u32.. {
        for base in 0..2 {
            let domain: Vec<u32> = (base..base + k).collect();
            let mut labels = vec![0; n];
            if fill(0, &mut labels, &domain, sets, &closing, &parity) {
                return k;
            }
        }
    }
    unreachable!()
}

#[test]
fn min_priorities_is_minimal_and_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cyclic = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let pi: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.3))
            .collect();
        let graph = PriorityGraph::new(pi.clone(), edges.iter().copied());
        let sets = cyclic_sets(n, &edges);
        let a = min_priorities(&graph);
        assert!(classification_equivalent(&graph, &pi, &a.relabel).unwrap());
        for s in &sets {
            let max = |p: &[u32]| s.iter().map(|&v| p[v]).max().unwrap() % 2;
            assert_eq!(max(&pi), max(&a.relabel));
        }
        if !sets.is_empty() {
            cyclic += 1;
            assert_eq!(a.count, brute_min_count(n, &sets, &pi), "{pi:?} {edges:?}");
        }
    }
    assert!(cyclic > 100);
}

#[test]
fn compression_is_idempotent_and_keeps_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let labels: Vec<u32> = (0..rng.gen_range(1..8))
            .map(|_| rng.gen_range(0..12))
            .collect();
        let (out, count, base) = compress(&labels);
        assert_eq!(compress(&out), (out.clone(), count, base));
        for i in 0..labels.len() {
            assert_eq!(labels[i] % 2, out[i] % 2);
            for j in 0..labels.len() {
                assert!(labels[i] >= labels[j] || out[i] <= out[j]);
            }
        }
    }
}

#[test]
fn relabeled_automata_accept_the_same_lassos() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..60 {
        let a = random_dvpa(seed, SMALL, AcceptanceKind::StairParity);
        let index = stair_index(&a).unwrap();
        let again = stair_index(&index.relabeled).unwrap();
        assert_eq!(again.count, index.count);
        for _ in 0..50 {
            let l = random_lasso(&mut rng, &a, 6, true);
            assert_eq!(
                accepts(&a, &l).unwrap().accepted,
                accepts(&index.relabeled, &l).unwrap().accepted,
                "seed {seed}: {}",
                l.format(a.alphabet())
            );
        }
    }
}
