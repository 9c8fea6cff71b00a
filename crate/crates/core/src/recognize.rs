//! Graph-class recognition and homogeneous sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::pattern::{PatternError, PatternMatrix};
use crate::solver::{solve, PartAssignment};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("part {0:?} induces neither a clique nor an independent set")]
    PartNotUniform(VertexSet),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("unknown graph class {0:?}")]
    UnknownClass(String),
}

/// The hereditary graph classes obstructions can be enumerated over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    All,
    Split,
    Bipartite,
    Cobipartite,
    Chordal,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::All,
        GraphClass::Split,
        GraphClass::Bipartite,
        GraphClass::Cobipartite,
        GraphClass::Chordal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::All => "all",
            GraphClass::Split => "split",
            GraphClass::Bipartite => "bipartite",
            GraphClass::Cobipartite => "cobipartite",
            GraphClass::Chordal => "chordal",
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        match self {
            GraphClass::All => true,
            GraphClass::Split => split_partition(g).is_some(),
            GraphClass::Bipartite => is_bipartite(g).is_some(),
            GraphClass::Cobipartite => is_cobipartite(g).is_some(),
            GraphClass::Chordal => is_chordal(g).is_some(),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = RecognizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RecognizeError::UnknownClass(s.to_string()))
    }
}

/// A partition of the vertices into a clique and an independent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

impl SplitPartition {
    pub fn clique_set(&self) -> VertexSet {
        self.clique.iter().copied().collect()
    }

    pub fn independent_set(&self) -> VertexSet {
        self.independent.iter().copied().collect()
    }
}

fn is_clique(g: &Graph, s: VertexSet) -> bool {
    s.iter()
        .all(|v| (s.0 & !g.neighbors(v).0) == VertexSet::singleton(v).0)
}

fn is_independent(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).0 & s.0 == 0)
}

/// A split partition of `g`, if one exists.
///
/// Membership uses the degree-sequence test: with degrees sorted
/// non-increasingly and `w` the largest `i` with `d_i >= i - 1`, the graph is
/// split iff `sum_{i<=w} d_i = w(w-1) + sum_{i>w} d_i`, and then the `w`
/// highest-degree vertices form a clique whose complement is independent.
/// Among all split partitions with a clique of that (maximum) size, the one
/// with the lexicographically least sorted clique is returned.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.order();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let degrees: Vec<usize> = by_degree.iter().map(|&v| g.degree(v)).collect();
    let w = (1..=n)
        .rev()
        .find(|&i| degrees[i - 1] + 1 >= i)
        .unwrap_or(0);
    let head: usize = degrees[..w].iter().sum();
    let tail: usize = degrees[w..].iter().sum();
    if head != w * w.saturating_sub(1) + tail {
        return None;
    }
    let base: VertexSet = by_degree[..w].iter().copied().collect();
    debug_assert!(is_clique(g, base) && is_independent(g, VertexSet(g.vertices().0 & !base.0)));

    let mut best = base.to_vec();
    for c in base.iter() {
        for x in VertexSet(g.vertices().0 & !base.0).iter() {
            let mut cand = base;
            cand.remove(c);
            cand.insert(x);
            let rest = VertexSet(g.vertices().0 & !cand.0);
            if is_clique(g, cand) && is_independent(g, rest) {
                let sorted = cand.to_vec();
                if sorted < best {
                    best = sorted;
                }
            }
        }
    }
    let clique: VertexSet = best.iter().copied().collect();
    Some(SplitPartition {
        clique: best,
        independent: VertexSet(g.vertices().0 & !clique.0).to_vec(),
    })
}

/// A proper 2-colouring (`0`/`1` per vertex), if `g` is bipartite. Each
/// component's lowest vertex gets colour `0`.
pub fn is_bipartite(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for u in g.neighbors(v).iter() {
                match color[u] {
                    None => {
                        color[u] = Some(1 - cv);
                        queue.push_back(u);
                    }
                    Some(cu) if cu == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// A partition into two cliques (`0`/`1` per vertex), if one exists.
pub fn is_cobipartite(g: &Graph) -> Option<Vec<u8>> {
    is_bipartite(&g.complement())
}

/// A perfect elimination ordering, if `g` is chordal.
///
/// The candidate ordering is the reverse of a maximum cardinality search
/// (ties to the lowest index); it is then checked directly.
pub fn is_chordal(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut numbered = VertexSet::EMPTY;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered.insert(v);
        visit.push(v);
        for u in g.neighbors(v).iter() {
            if !numbered.contains(u) {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    is_perfect_elimination_ordering(g, &visit).then_some(visit)
}

/// For every vertex, its neighbours later in `order` form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut later = g.vertices();
    order.iter().all(|&v| {
        later.remove(v);
        is_clique(g, VertexSet(g.neighbors(v).0 & later.0))
    })
}

/// A partition into `k` independent sets and `ell` cliques, if one exists;
/// parts `0..k` are the independent ones.
pub fn is_kl_graph(
    g: &Graph,
    k: usize,
    ell: usize,
) -> Result<Option<PartAssignment>, RecognizeError> {
    let m = PatternMatrix::kl(k, ell)?;
    Ok(solve(g, &m, None).expect("(k,l) matrices are within solver limits"))
}

/// True iff every vertex outside `h` is adjacent to all of `h` or to none of it.
pub fn is_homogeneous_set(g: &Graph, h: VertexSet) -> Result<bool, GraphError> {
    let n = g.order();
    if let Some(v) = h.iter().find(|&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    Ok(VertexSet(g.vertices().0 & !h.0).iter().all(|v| {
        let seen = g.neighbors(v).0 & h.0;
        seen == 0 || seen == h.0
    }))
}

/// Vertices of a uniform part grouped by their neighbourhood outside the part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub part: VertexSetList,
    pub classes: Vec<VertexSetList>,
    pub max_class_size: usize,
}

pub type VertexSetList = Vec<usize>;

/// Groups `part` into classes of vertices with identical neighbourhoods
/// outside `part`. Since `part` is a clique or an independent set, each class
/// is a homogeneous set of `g`.
pub fn homogeneity_report(g: &Graph, part: VertexSet) -> Result<HomogeneityReport, RecognizeError> {
    let n = g.order();
    if let Some(v) = part.iter().find(|&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
    }
    if !is_clique(g, part) && !is_independent(g, part) {
        return Err(RecognizeError::PartNotUniform(part));
    }
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    for v in part.iter() {
        let outside = g.neighbors(v).0 & !part.0;
        match classes.iter_mut().find(|(key, _)| *key == outside) {
            Some((_, members)) => members.push(v),
            None => classes.push((outside, vec![v])),
        }
    }
    let classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, c)| c).collect();
    Ok(HomogeneityReport {
        part: part.to_vec(),
        max_class_size: classes.iter().map(Vec::len).max().unwrap_or(0),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, enumerate_split_graphs};
    use crate::obstruction::construct_gt;

    fn two_k2() -> Graph {
        Graph::complete(2)
            .disjoint_union(&Graph::complete(2))
            .unwrap()
    }

    fn claw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_partition(&Graph::cycle(4).unwrap()), None);
        assert_eq!(split_partition(&two_k2()), None);
        let k3 = split_partition(&Graph::complete(3)).unwrap();
        assert_eq!(k3.clique, vec![0, 1, 2]);
        assert!(k3.independent.is_empty());
        assert_eq!(
            split_partition(&Graph::empty(0)).unwrap().clique,
            Vec::<usize>::new()
        );
    }

    #[test]
    fn split_choice_is_largest_then_least() {
        // P4 0-1-2-3: clique {1,2} is the only size-2 choice with independent rest
        let p = split_partition(&Graph::path(4)).unwrap();
        assert_eq!((p.clique, p.independent), (vec![1, 2], vec![0, 3]));
        // P3 0-1-2: {0,1} and {1,2} both work; take the least
        let p = split_partition(&Graph::path(3)).unwrap();
        assert_eq!(p.clique, vec![0, 1]);
        // edgeless: any single vertex is a maximum clique
        assert_eq!(split_partition(&Graph::empty(3)).unwrap().clique, vec![0]);
    }

    #[test]
    fn split_agrees_with_solver_and_complement() {
        let m = PatternMatrix::kl(1, 1).unwrap();
        for n in 0..=7 {
            for g in enumerate_graphs(n).unwrap() {
                let p = split_partition(&g);
                assert_eq!(p.is_some(), solve(&g, &m, None).unwrap().is_some(), "{g:?}");
                assert_eq!(p.is_some(), split_partition(&g.complement()).is_some());
                if let Some(p) = p {
                    assert!(is_clique(&g, p.clique_set()));
                    assert!(is_independent(&g, p.independent_set()));
                    assert_eq!(p.clique.len() + p.independent.len(), n);
                }
            }
        }
    }

    #[test]
    fn split_enumeration_equals_filtered() {
        for n in 0..=8 {
            let filtered: Vec<Graph> = enumerate_graphs(n)
                .unwrap()
                .into_iter()
                .filter(|g| split_partition(g).is_some())
                .collect();
            assert_eq!(enumerate_split_graphs(n).unwrap(), filtered, "n={n}");
        }
    }

    #[test]
    fn bipartite_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(is_bipartite(&c5), None);
        assert_eq!(is_cobipartite(&c5), None);
        assert_eq!(
            is_bipartite(&Graph::cycle(6).unwrap()),
            Some(vec![0, 1, 0, 1, 0, 1])
        );
        let cob = is_cobipartite(&Graph::complete(4)).unwrap();
        assert_eq!(cob.len(), 4);
        assert_eq!(is_bipartite(&Graph::complete(4)), None);
    }

    #[test]
    fn chordal_examples() {
        assert_eq!(is_chordal(&Graph::cycle(4).unwrap()), None);
        let g4 = construct_gt(4).unwrap();
        let peo = is_chordal(&g4).unwrap();
        assert!(is_perfect_elimination_ordering(&g4, &peo));
        for n in 0..=7 {
            for g in enumerate_split_graphs(n).unwrap() {
                assert!(is_chordal(&g).is_some(), "{g:?}");
            }
        }
        assert!(!is_perfect_elimination_ordering(
            &Graph::cycle(4).unwrap(),
            &[0, 1, 2, 3]
        ));
    }

    #[test]
    fn chordal_matches_brute_force_on_small_graphs() {
        // chordal iff no induced cycle of length >= 4
        for n in 0..=6 {
            for g in enumerate_graphs(n).unwrap() {
                let has_hole = (0..1u64 << n).any(|s| {
                    let s = VertexSet(s);
                    if s.len() < 4 {
                        return false;
                    }
                    let h = g.induced_subgraph(s).unwrap();
                    (0..h.order()).all(|v| h.degree(v) == 2) && is_connected(&h)
                });
                assert_eq!(is_chordal(&g).is_some(), !has_hole, "{g:?}");
            }
        }
    }

    fn is_connected(g: &Graph) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next.0 |= g.neighbors(v).0;
            }
            frontier = VertexSet(next.0 & !seen.0);
            seen.0 |= next.0;
        }
        seen.len() == g.order()
    }

    #[test]
    fn kl_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(is_kl_graph(&c5, 1, 1).unwrap(), None);
        let g3 = construct_gt(3).unwrap();
        assert!(is_kl_graph(&g3, 3, 0).unwrap().is_some());
        assert!(is_kl_graph(&g3, 2, 1).unwrap().is_some());
        assert!(is_kl_graph(&g3, 0, 0).is_err());
    }

    #[test]
    fn homogeneous_examples() {
        let g = Graph::cycle(5).unwrap();
        for v in 0..5 {
            assert!(is_homogeneous_set(&g, VertexSet::singleton(v)).unwrap());
        }
        assert!(is_homogeneous_set(&g, g.vertices()).unwrap());
        let leaves: VertexSet = [1, 2, 3].into_iter().collect();
        assert!(is_homogeneous_set(&claw(), leaves).unwrap());
        assert!(!is_homogeneous_set(&Graph::path(3), [0, 1].into_iter().collect()).unwrap());
        assert!(is_homogeneous_set(&g, VertexSet::singleton(9)).is_err());
    }

    #[test]
    fn report_examples() {
        let leaves: VertexSet = [1, 2, 3].into_iter().collect();
        let r = homogeneity_report(&claw(), leaves).unwrap();
        assert_eq!(r.classes, vec![vec![1, 2, 3]]);
        assert_eq!(r.max_class_size, 3);

        let c4 = Graph::cycle(4).unwrap();
        let r = homogeneity_report(&c4, [0, 2].into_iter().collect()).unwrap();
        // 0 and 2 both see exactly {1, 3}
        assert_eq!(r.max_class_size, 2);
        let r = homogeneity_report(&c4, [0, 1].into_iter().collect()).unwrap();
        assert_eq!(r.classes, vec![vec![0], vec![1]]);

        let p3 = Graph::path(3);
        assert!(matches!(
            homogeneity_report(&p3, p3.vertices()),
            Err(RecognizeError::PartNotUniform(_))
        ));
        assert_eq!(
            homogeneity_report(&p3, VertexSet::EMPTY)
                .unwrap()
                .max_class_size,
            0
        );
    }

    #[test]
    fn report_classes_are_homogeneous() {
        for g in enumerate_graphs(6).unwrap() {
            for s in 0..1u64 << 6 {
                let Ok(r) = homogeneity_report(&g, VertexSet(s)) else {
                    continue;
                };
                for class in r.classes {
                    let set: VertexSet = class.into_iter().collect();
                    assert!(is_homogeneous_set(&g, set).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_names() {
        for c in GraphClass::ALL {
            assert_eq!(c.name().parse::<GraphClass>().unwrap(), c);
        }
        assert!("cograph".parse::<GraphClass>().is_err());
    }
}
