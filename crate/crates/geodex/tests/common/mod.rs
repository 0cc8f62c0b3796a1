//! Shared test helpers: an independent walk-enumeration oracle and
//! digraph generators. The oracle counts walks by explicit DFS over the
//! out-lists, with no shared code path with the library's capped
//! matrix-power check.

// each integration test target compiles its own copy and uses a subset
#![allow(dead_code)]

use geodex::Digraph;
use rand::Rng;

/// `counts[u][v]` = number of walks from `u` to `v` of length at most
/// `k`, the empty walk included.
pub fn walk_counts(g: &Digraph, k: usize) -> Vec<Vec<u64>> {
    let n = g.n();
    let mut counts = vec![vec![0u64; n]; n];
    for source in 0..n {
        let mut stack = vec![(source, 0usize)];
        while let Some((v, depth)) = stack.pop() {
            counts[source][v] += 1;
            if depth < k {
                for &w in g.out_neighbors(v) {
                    stack.push((w, depth + 1));
                }
            }
        }
    }
    counts
}

pub fn brute_is_k_geodetic(g: &Digraph, k: usize) -> bool {
    walk_counts(g, k)
        .iter()
        .all(|row| row.iter().all(|&c| c <= 1))
}

/// Every digraph on `n` vertices, as an iterator over arc subsets.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    (0u64..(1 << pairs.len())).map(move |mask| {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        Digraph::from_arcs(n, arcs).expect("generated arcs are simple")
    })
}

pub fn random_digraph(rng: &mut impl Rng, n: usize, arc_probability: f64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(arc_probability) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("generated arcs are simple")
}
