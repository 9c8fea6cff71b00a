//! Explicit obstruction families. Vertex orders are fixed so that the graph6
//! output is stable.

use serde::Serialize;

use crate::graph::Graph;
use crate::pattern::PatternMatrix;

use super::{binomial, ObstructionError};

/// A vertex of the independent side adjacent to exactly one `n`-subset of `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetVertex {
    pub vertex: usize,
    pub neighbours: Vec<usize>,
}

/// The large split minimal obstruction for `M_{2n+1,n}`.
///
/// Vertex layout: `a = 0`; `b_1..b_2n = 1..=2n` (a clique, all adjacent to
/// `a`); mates `b'_i = 2n + i`, pairwise non-adjacent, each adjacent to `a`
/// and to every `b_j` with `j != i`; then one vertex per `n`-subset of `B` in
/// lexicographic order, adjacent to exactly that subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargeSplitConstruction {
    pub n: usize,
    pub matrix: PatternMatrix,
    pub graph: Graph,
    pub special: usize,
    pub clique: Vec<usize>,
    pub mates: Vec<usize>,
    pub subsets: Vec<SubsetVertex>,
}

pub fn construct_large_split(n: usize) -> Result<LargeSplitConstruction, ObstructionError> {
    let order = binomial(2 * n, n).map(|b| b + 4 * n as u128 + 1);
    if n == 0 || order.map_or(true, |o| o > crate::graph::MAX_ORDER as u128) {
        return Err(ObstructionError::BadParameters(format!(
            "construction needs 1 <= n <= 3 to fit in {} vertices, got n={n}",
            crate::graph::MAX_ORDER
        )));
    }
    let matrix = PatternMatrix::m_kt(2 * n + 1, n)?;
    let special = 0;
    let clique: Vec<usize> = (1..=2 * n).collect();
    let mates: Vec<usize> = (2 * n + 1..=4 * n).collect();
    let mut edges = Vec::new();
    for (i, &b) in clique.iter().enumerate() {
        edges.push((special, b));
        edges.push((special, mates[i]));
        for (j, &c) in clique.iter().enumerate() {
            if j > i {
                edges.push((b, c));
            }
            if j != i {
                edges.push((mates[i], c));
            }
        }
    }
    let mut subsets = Vec::new();
    let mut next = 4 * n + 1;
    for combo in combinations(2 * n, n) {
        let neighbours: Vec<usize> = combo.iter().map(|&i| clique[i]).collect();
        edges.extend(neighbours.iter().map(|&b| (next, b)));
        subsets.push(SubsetVertex {
            vertex: next,
            neighbours,
        });
        next += 1;
    }
    let graph = Graph::from_edges(next, &edges)?;
    Ok(LargeSplitConstruction {
        n,
        matrix,
        graph,
        special,
        clique,
        mates,
        subsets,
    })
}

/// All `r`-subsets of `0..n` as sorted index vectors, lexicographically.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, r, current, out);
            current.pop();
        }
    }
    go(0, n, r, &mut current, &mut out);
    out
}

/// `G(t)`: the path `p_1..p_2t` on vertices `0..2t`, plus `u = 2t` adjacent
/// to every path vertex except the two endpoints.
pub fn construct_gt(t: usize) -> Result<Graph, ObstructionError> {
    if t < 3 {
        return Err(ObstructionError::BadParameters(format!(
            "G(t) needs t >= 3, got {t}"
        )));
    }
    if 2 * t + 1 > crate::graph::MAX_ORDER {
        return Err(ObstructionError::BadParameters(format!(
            "G({t}) exceeds the vertex limit"
        )));
    }
    let len = 2 * t;
    let u = len;
    let mut edges: Vec<(usize, usize)> = (0..len - 1).map(|i| (i, i + 1)).collect();
    edges.extend((1..len - 1).map(|p| (u, p)));
    Ok(Graph::from_edges(len + 1, &edges)?)
}
