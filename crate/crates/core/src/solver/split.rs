//! M-partitions of split graphs.
//!
//! Fix a split partition `(K, I)` of the graph. A zero-diagonal part is an
//! independent set, so it holds at most one vertex of `K`; a one-diagonal part
//! is a clique, so it holds at most one vertex of `I`.
//!
//! * If block `C` has a `*` between a zero part `z` and a one part `o`, put `K`
//!   in `o` and `I` in `z`; all other parts stay empty.
//! * Otherwise choose, for every zero part, its `K`-occupant or none, and for
//!   every one part, its `I`-occupant or none. The remaining `K` vertices can
//!   then only go to one parts and the remaining `I` vertices only to zero
//!   parts, which is finished as a list problem. There are at most
//!   `(|K|+1)^k (|I|+1)^ell` choices.

use crate::graph::{bit, Graph, VertexSet};
use crate::pattern::{PatternEntry, PatternMatrix};
use crate::recognize::split_partition;

use super::{PartAssignment, Propagator, SolveError, MAX_PARTS};

/// How [`solve_split_traced`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitPath {
    /// Direct two-part witness through a `*` of block `C`.
    StarInC { zero_part: usize, one_part: usize },
    /// Occupant enumeration; `branches` counts the completed choices.
    Branching { branches: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSolution {
    pub assignment: Option<PartAssignment>,
    pub path: SplitPath,
}

pub fn solve_split(g: &Graph, m: &PatternMatrix) -> Result<Option<PartAssignment>, SolveError> {
    Ok(solve_split_traced(g, m)?.assignment)
}

pub fn solve_split_traced(g: &Graph, m: &PatternMatrix) -> Result<SplitSolution, SolveError> {
    if let Some(d) = m.first_diagonal_star() {
        return Err(SolveError::DiagonalStar(d));
    }
    if m.order() > MAX_PARTS {
        return Err(SolveError::TooManyParts(m.order()));
    }
    let split = split_partition(g).ok_or(SolveError::NotSplit)?;
    let clique = split.clique_set();
    let independent = split.independent_set();
    let order = m.order();
    let zero_parts: Vec<usize> = (0..order)
        .filter(|&i| m.get(i, i) == PatternEntry::Zero)
        .collect();
    let one_parts: Vec<usize> = (0..order)
        .filter(|&i| m.get(i, i) == PatternEntry::One)
        .collect();

    for &z in &zero_parts {
        for &o in &one_parts {
            if m.get(z, o) == PatternEntry::Star {
                let parts = (0..g.order())
                    .map(|v| if clique.contains(v) { o } else { z })
                    .collect();
                return Ok(SplitSolution {
                    assignment: Some(PartAssignment::new(parts)),
                    path: SplitPath::StarInC {
                        zero_part: z,
                        one_part: o,
                    },
                });
            }
        }
    }

    let mut search = Occupants {
        g,
        m,
        propagator: Propagator::new(m),
        clique,
        independent,
        zero_mask: zero_parts.iter().fold(0, |acc, &p| acc | bit(p)),
        one_mask: one_parts.iter().fold(0, |acc, &p| acc | bit(p)),
        chosen: Vec::with_capacity(order),
        branches: 0,
    };
    let assignment = search.choose(0, VertexSet::EMPTY);
    Ok(SplitSolution {
        assignment,
        path: SplitPath::Branching {
            branches: search.branches,
        },
    })
}

struct Occupants<'a> {
    g: &'a Graph,
    m: &'a PatternMatrix,
    propagator: Propagator,
    clique: VertexSet,
    independent: VertexSet,
    zero_mask: u64,
    one_mask: u64,
    /// `(part, vertex)` pairs fixed so far.
    chosen: Vec<(usize, usize)>,
    branches: u64,
}

impl Occupants<'_> {
    fn choose(&mut self, part: usize, used: VertexSet) -> Option<PartAssignment> {
        if part == self.m.order() {
            return self.complete(used);
        }
        let pool = if self.zero_mask & bit(part) != 0 {
            self.clique
        } else {
            self.independent
        };
        for v in VertexSet(pool.0 & !used.0).iter() {
            let consistent = self
                .chosen
                .iter()
                .all(|&(q, u)| self.m.get(part, q).permits(self.g.has_edge(u, v)));
            if !consistent {
                continue;
            }
            self.chosen.push((part, v));
            let mut now_used = used;
            now_used.insert(v);
            let found = self.choose(part + 1, now_used);
            self.chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        self.choose(part + 1, used)
    }

    fn complete(&mut self, used: VertexSet) -> Option<PartAssignment> {
        self.branches += 1;
        let n = self.g.order();
        let mut domains = vec![0u64; n];
        for v in 0..n {
            domains[v] = if self.clique.contains(v) {
                self.one_mask
            } else {
                self.zero_mask
            };
        }
        for &(p, v) in &self.chosen {
            domains[v] = bit(p);
        }
        debug_assert!(used.iter().all(|v| domains[v].count_ones() == 1));
        self.propagator.run(self.g, domains)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_split_graphs;
    use crate::solver::{solve, validate};

    #[test]
    fn star_in_c_path() {
        let m: PatternMatrix = "0*;*1".parse().unwrap();
        for n in 0..=6 {
            for g in enumerate_split_graphs(n).unwrap() {
                let s = solve_split_traced(&g, &m).unwrap();
                assert!(matches!(
                    s.path,
                    SplitPath::StarInC {
                        zero_part: 0,
                        one_part: 1
                    }
                ));
                assert!(validate(&g, &m, s.assignment.as_ref().unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        let m: PatternMatrix = "0*;*1".parse().unwrap();
        assert_eq!(
            solve_split(&Graph::cycle(4).unwrap(), &m),
            Err(SolveError::NotSplit)
        );
        let star: PatternMatrix = "**;*1".parse().unwrap();
        assert_eq!(
            solve_split(&Graph::complete(2), &star),
            Err(SolveError::DiagonalStar(0))
        );
    }

    #[test]
    fn agrees_with_generic_solver_exhaustively() {
        let mut matrices: Vec<PatternMatrix> = Vec::new();
        for order in 1..=3 {
            matrices.extend(
                PatternMatrix::all_symmetric(order).filter(|m| m.first_diagonal_star().is_none()),
            );
        }
        for n in 0..=6 {
            for g in enumerate_split_graphs(n).unwrap() {
                for m in &matrices {
                    let fast = solve_split(&g, m).unwrap();
                    let slow = solve(&g, m, None).unwrap();
                    assert_eq!(fast.is_some(), slow.is_some(), "{g:?} {m}");
                    if let Some(w) = fast {
                        assert!(validate(&g, m, &w).unwrap());
                    }
                }
            }
        }
    }
}
