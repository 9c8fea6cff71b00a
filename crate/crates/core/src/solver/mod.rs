//! Exact M-partition solving.
//!
//! The generic solver is a depth-first search over per-vertex candidate part
//! sets. The next vertex is the one with the fewest candidates (ties to the
//! lowest index), parts are tried lowest index first, and each placement is
//! propagated to every unplaced vertex; an empty candidate set fails the
//! branch immediately.

mod split;

pub use split::{solve_split, solve_split_traced, SplitPath, SplitSolution};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, low_mask, Graph, VertexSet};
use crate::pattern::PatternMatrix;

/// Parts are tracked in a `u64` mask.
pub const MAX_PARTS: usize = 64;

pub const COUNT_MAX_VERTICES: usize = 10;
pub const COUNT_MAX_PARTS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("vertex {vertex} is assigned to part {part}, but the matrix has {m} parts")]
    PartOutOfRange {
        vertex: usize,
        part: usize,
        m: usize,
    },
    #[error("assignment covers {got} vertices, graph has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("list of vertex {vertex} names part {part}, but the matrix has {m} parts")]
    ListPartOutOfRange {
        vertex: usize,
        part: usize,
        m: usize,
    },
    #[error("lists cover {got} vertices, graph has {expected}")]
    ListLength { expected: usize, got: usize },
    #[error("matrices are limited to {MAX_PARTS} parts, got {0}")]
    TooManyParts(usize),
    #[error("exhaustive counting is limited to n <= {COUNT_MAX_VERTICES} and m <= {COUNT_MAX_PARTS}, got n={n}, m={m}")]
    TooLarge { n: usize, m: usize },
    #[error("graph is not split")]
    NotSplit,
    #[error("matrix has a '*' on the diagonal at index {0}")]
    DiagonalStar(usize),
    #[error("malformed list text: {0}")]
    MalformedLists(String),
}

/// Total map from vertices to part indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartAssignment {
    pub parts: Vec<usize>,
}

impl PartAssignment {
    pub fn new(parts: Vec<usize>) -> Self {
        PartAssignment { parts }
    }

    /// Vertices placed in `part`.
    pub fn members(&self, part: usize) -> VertexSet {
        self.parts
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == part)
            .map(|(v, _)| v)
            .collect()
    }
}

/// Per-vertex allowed parts for the list version of the problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListConstraint {
    pub allowed: Vec<Vec<usize>>,
}

impl ListConstraint {
    pub fn new(allowed: Vec<Vec<usize>>) -> Self {
        ListConstraint { allowed }
    }

    /// Parses `"0,1;1;0,2"`: one `;`-separated entry per vertex.
    pub fn parse(text: &str) -> Result<Self, SolveError> {
        let allowed = text
            .split(';')
            .map(|entry| {
                entry
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| SolveError::MalformedLists(format!("bad part {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ListConstraint { allowed })
    }

    fn masks(&self, n: usize, m: usize) -> Result<Vec<u64>, SolveError> {
        if self.allowed.len() != n {
            return Err(SolveError::ListLength {
                expected: n,
                got: self.allowed.len(),
            });
        }
        self.allowed
            .iter()
            .enumerate()
            .map(|(vertex, list)| {
                list.iter().try_fold(0u64, |acc, &part| {
                    if part >= m {
                        Err(SolveError::ListPartOutOfRange { vertex, part, m })
                    } else {
                        Ok(acc | bit(part))
                    }
                })
            })
            .collect()
    }
}

/// True iff `assignment` is an M-partition of `g`.
pub fn validate(
    g: &Graph,
    m: &PatternMatrix,
    assignment: &PartAssignment,
) -> Result<bool, SolveError> {
    let n = g.order();
    if assignment.parts.len() != n {
        return Err(SolveError::AssignmentLength {
            expected: n,
            got: assignment.parts.len(),
        });
    }
    let order = m.order();
    if let Some((vertex, &part)) = assignment
        .parts
        .iter()
        .enumerate()
        .find(|&(_, &p)| p >= order)
    {
        return Err(SolveError::PartOutOfRange {
            vertex,
            part,
            m: order,
        });
    }
    Ok(pairs_ok(g, m, &assignment.parts))
}

fn pairs_ok(g: &Graph, m: &PatternMatrix, parts: &[usize]) -> bool {
    let n = parts.len();
    (0..n).all(|u| ((u + 1)..n).all(|v| m.get(parts[u], parts[v]).permits(g.has_edge(u, v))))
}

/// Finds an M-partition of `g` respecting `lists`, or proves there is none.
///
/// Without lists, a matrix with a `*` on the diagonal is solved by placing
/// every vertex in the first such part.
pub fn solve(
    g: &Graph,
    m: &PatternMatrix,
    lists: Option<&ListConstraint>,
) -> Result<Option<PartAssignment>, SolveError> {
    let n = g.order();
    let order = m.order();
    if order > MAX_PARTS {
        return Err(SolveError::TooManyParts(order));
    }
    let domains = match lists {
        Some(lists) => lists.masks(n, order)?,
        None => {
            if let Some(d) = m.first_diagonal_star() {
                return Ok(Some(PartAssignment::new(vec![d; n])));
            }
            vec![low_mask(order); n]
        }
    };
    Ok(Propagator::new(m).run(g, domains))
}

/// Compiled compatibility masks: `adjacent[i]` holds the parts `j` with
/// `M(i,j) != 0`, `non_adjacent[i]` those with `M(i,j) != 1`.
pub(crate) struct Propagator {
    adjacent: Vec<u64>,
    non_adjacent: Vec<u64>,
}

impl Propagator {
    pub(crate) fn new(m: &PatternMatrix) -> Self {
        let order = m.order();
        let mask = |i: usize, adjacent: bool| {
            (0..order)
                .filter(|&j| m.get(i, j).permits(adjacent))
                .fold(0u64, |acc, j| acc | bit(j))
        };
        Propagator {
            adjacent: (0..order).map(|i| mask(i, true)).collect(),
            non_adjacent: (0..order).map(|i| mask(i, false)).collect(),
        }
    }

    pub(crate) fn run(&self, g: &Graph, domains: Vec<u64>) -> Option<PartAssignment> {
        let n = g.order();
        if domains.contains(&0) {
            return None;
        }
        let mut parts = vec![0usize; n];
        if self.dfs(g, &domains, low_mask(n), &mut parts) {
            Some(PartAssignment::new(parts))
        } else {
            None
        }
    }

    fn dfs(&self, g: &Graph, domains: &[u64], unplaced: u64, parts: &mut [usize]) -> bool {
        if unplaced == 0 {
            return true;
        }
        let mut v = usize::MAX;
        let mut fewest = u32::MAX;
        for u in VertexSet(unplaced).iter() {
            let size = domains[u].count_ones();
            if size < fewest {
                fewest = size;
                v = u;
                if size == 1 {
                    break;
                }
            }
        }
        let rest = unplaced & !bit(v);
        let row = g.row(v);
        let mut next = domains.to_vec();
        let mut choices = domains[v];
        while choices != 0 {
            let i = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            next.copy_from_slice(domains);
            next[v] = bit(i);
            let feasible = VertexSet(rest).iter().all(|u| {
                next[u] &= if row & bit(u) != 0 {
                    self.adjacent[i]
                } else {
                    self.non_adjacent[i]
                };
                next[u] != 0
            });
            if feasible && self.dfs(g, &next, rest, parts) {
                parts[v] = i;
                return true;
            }
        }
        false
    }
}

/// Number of valid total assignments, by enumerating all `m^n` candidates.
pub fn count_partitions(g: &Graph, m: &PatternMatrix) -> Result<u64, SolveError> {
    let n = g.order();
    let order = m.order();
    if n > COUNT_MAX_VERTICES || order > COUNT_MAX_PARTS {
        return Err(SolveError::TooLarge { n, m: order });
    }
    let mut parts = vec![0usize; n];
    let mut count = 0u64;
    loop {
        if pairs_ok(g, m, &parts) {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(count);
            }
            parts[pos] += 1;
            if parts[pos] < order {
                break;
            }
            parts[pos] = 0;
            pos += 1;
        }
    }
}
