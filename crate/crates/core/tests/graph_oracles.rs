//! Brute-force checks of graph generation: every labeled graph is reduced to
//! the minimum of its codes over all vertex permutations, with no use of the
//! library's canonical labeling.

use std::collections::BTreeSet;

use mpart::graph::{enumerate_graphs, enumerate_split_graphs, Graph};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect()
}

/// Minimum edge-bit code of the labeled graph `code` over all relabelings.
fn oracle_min(n: usize, code: u64, perms: &[Vec<usize>], pairs: &[(usize, usize)]) -> u64 {
    let mut adj = vec![vec![false; n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if code >> k & 1 == 1 {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .enumerate()
                .filter(|&(_, &(u, v))| adj[p[u]][p[v]])
                .fold(0u64, |acc, (k, _)| acc | 1 << k)
        })
        .min()
        .unwrap()
}

fn code_of(g: &Graph, pairs: &[(usize, usize)]) -> u64 {
    pairs
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v))| g.has_edge(u, v))
        .fold(0u64, |acc, (k, _)| acc | 1 << k)
}

fn is_split_brute(n: usize, code: u64, pairs: &[(usize, usize)]) -> bool {
    let edge = |u: usize, v: usize| {
        let k = pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap();
        code >> k & 1 == 1
    };
    (0..1u64 << n).any(|clique| {
        pairs.iter().all(|&(u, v)| {
            let cu = clique >> u & 1 == 1;
            let cv = clique >> v & 1 == 1;
            match (cu, cv) {
                (true, true) => edge(u, v),
                (false, false) => !edge(u, v),
                _ => true,
            }
        })
    })
}

struct Oracle {
    classes: BTreeSet<u64>,
    split_classes: BTreeSet<u64>,
}

fn oracle(n: usize) -> Oracle {
    let perms = permutations(n);
    let pairs = pairs(n);
    let mut classes = BTreeSet::new();
    let mut split_classes = BTreeSet::new();
    for code in 0..1u64 << pairs.len() {
        let min = oracle_min(n, code, &perms, &pairs);
        if min == code {
            classes.insert(min);
            if is_split_brute(n, code, &pairs) {
                split_classes.insert(min);
            }
        }
    }
    Oracle {
        classes,
        split_classes,
    }
}

#[test]
fn graph_counts_match_permutation_oracle() {
    // oracle counts for n = 0..=6: 1, 1, 2, 4, 11, 34, 156
    let expected = [1usize, 1, 2, 4, 11, 34, 156];
    for n in 0..=6 {
        let o = oracle(n);
        assert_eq!(o.classes.len(), expected[n], "oracle count at n={n}");
        let graphs = enumerate_graphs(n).unwrap();
        assert_eq!(graphs.len(), o.classes.len(), "n={n}");
        let perms = permutations(n);
        let pairs = pairs(n);
        let ours: BTreeSet<u64> = graphs
            .iter()
            .map(|g| oracle_min(n, code_of(g, &pairs), &perms, &pairs))
            .collect();
        assert_eq!(ours, o.classes, "n={n}");
    }
}

#[test]
fn split_graphs_match_brute_force() {
    // oracle split counts for n = 0..=6: 1, 1, 2, 4, 9, 21, 56
    let expected = [1usize, 1, 2, 4, 9, 21, 56];
    for n in 0..=6 {
        let o = oracle(n);
        assert_eq!(o.split_classes.len(), expected[n], "n={n}");
        let perms = permutations(n);
        let pairs = pairs(n);
        let ours: BTreeSet<u64> = enumerate_split_graphs(n)
            .unwrap()
            .iter()
            .map(|g| oracle_min(n, code_of(g, &pairs), &perms, &pairs))
            .collect();
        assert_eq!(ours, o.split_classes, "n={n}");
    }
}
