//! Exact canonical labeling.
//!
//! The vertex set is refined to an equitable ordered partition (cells split by
//! neighbour counts into other cells), then the first non-singleton cell is
//! individualized vertex by vertex and the search recurses. Every discrete
//! partition yields a relabeled graph; the canonical form is the one whose
//! upper-triangle bit string (graph6 order) is lexicographically least.
//!
//! Vertices of a cell that are twins of an already-tried vertex are skipped:
//! the transposition of two twins is an automorphism fixing the current
//! partition, so both subtrees produce the same set of leaves.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{bit, to_graph6, Graph, VertexSet};

/// Relabeling-invariant representative of an isomorphism class.
///
/// Stored as the graph6 string of the canonically relabeled graph, so that
/// ordering compares order first and then the upper-triangle bit string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_graph6(&self) -> &str {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        super::parse_graph6(&self.0).expect("canonical forms hold valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let perm = canonical_labeling(g);
    CanonicalForm(to_graph6(&g.relabeled(&perm)))
}

/// Returns `perm` such that `g.relabeled(&perm)` is the canonical isomorph.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best_key: Vec::new(),
        best_perm: Vec::new(),
    };
    search.descend(vec![(0..n).collect()]);
    search.best_perm
}

struct Search<'a> {
    g: &'a Graph,
    best_key: Vec<u64>,
    best_perm: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let key = leaf_key(self.g, &perm);
            if self.best_perm.is_empty() || key < self.best_key {
                self.best_key = key;
                self.best_perm = perm;
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }
}

#[inline]
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let ignore = !(bit(u) | bit(v));
    (g.row(u) & ignore) == (g.row(v) & ignore)
}

/// Splits cells until every vertex of a cell has the same number of
/// neighbours in every cell. Sub-cells are ordered by that count, so the
/// result depends only on the isomorphism type of `(g, cells)`.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter: VertexSet = cells[s].iter().copied().collect();
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let count = |v: usize| (g.row(v) & splitter.0).count_ones();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut pieces: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        pieces.push(Vec::new());
                        last = Some(k);
                    }
                    pieces.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, pieces);
                continue 'restart;
            }
        }
        return cells;
    }
}

/// Upper-triangle bits of the relabeled graph in graph6 order, packed
/// most-significant-first so that slice comparison is lexicographic.
fn leaf_key(g: &Graph, perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let total = n * (n - 1) / 2;
    let mut key = vec![0u64; total.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        let row = g.row(perm[j]);
        for &pi in &perm[..j] {
            if row & bit(pi) != 0 {
                key[k / 64] |= 1u64 << (63 - k % 64);
            }
            k += 1;
        }
    }
    key
}
