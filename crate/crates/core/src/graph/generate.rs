//! Exhaustive generation of non-isomorphic graphs.
//!
//! Graphs of order `n` are produced from the representatives of order `n - 1`
//! by adding a vertex with every possible neighbourhood, canonicalizing, and
//! deduplicating. Split graphs are produced directly from (clique, independent
//! set, neighbourhoods) descriptions. Work is spread over the ambient rayon
//! pool; the result is always sorted by canonical form, so it does not depend
//! on the number of workers.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{bit, canonical_form, CanonicalForm, Graph, GraphError};

pub const MAX_ENUMERATION_ORDER: usize = 8;
pub const MAX_SPLIT_ENUMERATION_ORDER: usize = 9;

/// One representative per isomorphism class of graphs on `n` vertices,
/// ascending by canonical form. Each returned graph is canonically labeled.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    enumerate_graphs_with_limit(n, MAX_ENUMERATION_ORDER)
}

pub fn enumerate_graphs_with_limit(n: usize, limit: usize) -> Result<Vec<Graph>, GraphError> {
    if n > limit {
        return Err(GraphError::TooLarge { n, limit });
    }
    let levels = graph_levels(n);
    Ok(levels[n].iter().map(CanonicalForm::to_graph).collect())
}

/// Canonical forms of all graphs of each order `0..=n_max`.
pub(crate) fn graph_levels(n_max: usize) -> Vec<Vec<CanonicalForm>> {
    let mut levels = vec![vec![canonical_form(&Graph::empty(0))]];
    for n in 1..=n_max {
        let parents: Vec<Graph> = levels[n - 1].iter().map(CanonicalForm::to_graph).collect();
        let next: BTreeSet<CanonicalForm> = parents
            .par_iter()
            .flat_map_iter(|parent| {
                (0..1u64 << (n - 1)).map(move |nbrs| canonical_form(&extend(parent, nbrs)))
            })
            .collect();
        levels.push(next.into_iter().collect());
    }
    levels
}

/// Appends vertex `n` adjacent to the vertices in `nbrs`.
fn extend(parent: &Graph, nbrs: u64) -> Graph {
    let n = parent.order();
    let mut rows: Vec<u64> = (0..n)
        .map(|v| parent.row(v) | if nbrs & bit(v) != 0 { bit(n) } else { 0 })
        .collect();
    rows.push(nbrs);
    Graph::from_adjacency(rows).expect("extension preserves graph invariants")
}

/// One representative per isomorphism class of split graphs on `n` vertices,
/// ascending by canonical form.
pub fn enumerate_split_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    enumerate_split_graphs_with_limit(n, MAX_SPLIT_ENUMERATION_ORDER)
}

pub fn enumerate_split_graphs_with_limit(n: usize, limit: usize) -> Result<Vec<Graph>, GraphError> {
    if n > limit {
        return Err(GraphError::TooLarge { n, limit });
    }
    Ok(split_forms(n).iter().map(CanonicalForm::to_graph).collect())
}

pub(crate) fn split_forms(n: usize) -> Vec<CanonicalForm> {
    // Clique on 0..c, independent set on c..n. The independent vertices are
    // interchangeable, so only non-decreasing neighbourhood sequences are built.
    let seeds: Vec<(usize, u64)> = (0..=n)
        .flat_map(|c| {
            let first: Vec<(usize, u64)> = if c == n {
                vec![(c, 0)]
            } else {
                (0..1u64 << c).map(|m| (c, m)).collect()
            };
            first
        })
        .collect();
    let forms: BTreeSet<CanonicalForm> = seeds
        .par_iter()
        .flat_map_iter(|&(c, first)| {
            let mut out = Vec::new();
            let mut seq = Vec::with_capacity(n - c);
            if c < n {
                seq.push(first);
            }
            grow_split(n, c, &mut seq, &mut out);
            out
        })
        .collect();
    forms.into_iter().collect()
}

fn grow_split(n: usize, c: usize, seq: &mut Vec<u64>, out: &mut Vec<CanonicalForm>) {
    if seq.len() == n - c {
        let mut g = Graph::complete(c)
            .disjoint_union(&Graph::empty(n - c))
            .unwrap();
        for (i, &mask) in seq.iter().enumerate() {
            for u in 0..c {
                if mask & bit(u) != 0 {
                    g.add_edge(u, c + i);
                }
            }
        }
        out.push(canonical_form(&g));
        return;
    }
    let lo = seq.last().copied().unwrap_or(0);
    for mask in lo..(1u64 << c) {
        seq.push(mask);
        grow_split(n, c, seq, out);
        seq.pop();
    }
}
