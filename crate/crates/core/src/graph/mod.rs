//! Small simple undirected graphs stored as one `u64` adjacency mask per vertex.

mod canon;
pub(crate) mod generate;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use generate::{
    enumerate_graphs, enumerate_graphs_with_limit, enumerate_split_graphs,
    enumerate_split_graphs_with_limit, MAX_ENUMERATION_ORDER, MAX_SPLIT_ENUMERATION_ORDER,
};
pub use graph6::{parse_graph6, to_graph6};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs are limited to {MAX_ORDER} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("malformed graph6 string: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("order {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on vertices `0..n`, `n <= 64`.
///
/// Invariants: no self loops, symmetric rows, no bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graphs are limited to {MAX_ORDER} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking the invariants.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        for (v, &row) in rows.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            if row & !low_mask(n) != 0 {
                let vertex = (row & !low_mask(n)).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for u in VertexSet(row).iter() {
                if rows[u] & bit(v) == 0 {
                    return Err(GraphError::BadParameters(format!(
                        "adjacency is not symmetric at ({v},{u})"
                    )));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !low_mask(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| !self.adj[v] & full & !bit(v)).collect(),
        }
    }

    /// Induced subgraph on `set`, vertices relabeled in increasing order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = set.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let kept = set.to_vec();
        let mut g = Graph::empty(kept.len());
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut set = self.vertices();
        set.remove(v);
        self.induced_subgraph(set)
    }

    /// Relabels vertices: vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut position = vec![0usize; self.n];
        for (new, &old) in perm.iter().enumerate() {
            position[old] = new;
        }
        let adj = perm
            .iter()
            .map(|&old| {
                VertexSet(self.adj[old])
                    .iter()
                    .fold(0u64, |acc, w| acc | bit(position[w]))
            })
            .collect();
        Graph { n: self.n, adj }
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are in range")
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::BadParameters(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    /// `self` followed by a copy of `other` with labels shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << self.n));
        Ok(Graph { n, adj })
    }

    /// Parses the edge-list text form `"n; u-v, u-v, ..."`.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let bad = |msg: &str| GraphError::MalformedEdgeList(format!("{msg} in {text:?}"));
        let (head, tail) = match text.split_once(';') {
            Some((h, t)) => (h, t),
            None => (text, ""),
        };
        let n: usize = head.trim().parse().map_err(|_| bad("bad vertex count"))?;
        let mut edges = Vec::new();
        for item in tail.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (u, v) = item
                .split_once('-')
                .ok_or_else(|| bad("edge without '-'"))?;
            let u = u.trim().parse().map_err(|_| bad("bad endpoint"))?;
            let v = v.trim().parse().map_err(|_| bad("bad endpoint"))?;
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}; {}", self.n, edges.join(", "))
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    /// Accepts either the edge-list form (contains `;`) or graph6.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains(';') {
            Graph::parse_edge_list(s)
        } else {
            parse_graph6(s)
        }
    }
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_graph6(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_graph6(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(k2.has_edge(0, 1) && k2.has_edge(1, 0));
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, Graph::cycle(4).unwrap());
        assert_eq!(
            Graph::from_edges(2, &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        let dup = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn complement_examples() {
        let two_k2 = Graph::complete(2)
            .disjoint_union(&Graph::complete(2))
            .unwrap();
        assert_eq!(
            two_k2.complement(),
            Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
        );
        assert_eq!(
            canonical_form(&two_k2.complement()),
            canonical_form(&Graph::cycle(4).unwrap())
        );
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(canonical_form(&c5.complement()), canonical_form(&c5));
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn delete_vertex_examples() {
        let c5 = Graph::cycle(5).unwrap();
        for v in 0..5 {
            assert_eq!(
                canonical_form(&c5.delete_vertex(v).unwrap()),
                canonical_form(&Graph::path(4))
            );
        }
        assert_eq!(
            Graph::complete(2).delete_vertex(0).unwrap(),
            Graph::empty(1)
        );
        assert!(Graph::complete(2).delete_vertex(2).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let s: VertexSet = [0, 1, 2].into_iter().collect();
        assert_eq!(c5.induced_subgraph(s).unwrap(), Graph::path(3));
        let s: VertexSet = [0, 2].into_iter().collect();
        assert_eq!(c5.induced_subgraph(s).unwrap(), Graph::empty(2));
        assert!(c5.induced_subgraph(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn generators() {
        let two_k2 = Graph::complete(2)
            .disjoint_union(&Graph::complete(2))
            .unwrap();
        assert_eq!(two_k2, Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert!(matches!(Graph::cycle(2), Err(GraphError::BadParameters(_))));
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::path(1).edge_count(), 0);
    }

    #[test]
    fn adjacency_checks() {
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b100, 0]).is_err());
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::parse_edge_list("4; 0-1, 1-2 ,2-3").unwrap();
        assert_eq!(g, Graph::path(4));
        assert_eq!(g.to_edge_list(), "4; 0-1, 1-2, 2-3");
        assert_eq!(Graph::parse_edge_list("3").unwrap(), Graph::empty(3));
        assert_eq!(Graph::parse_edge_list("3;").unwrap(), Graph::empty(3));
        assert!(Graph::parse_edge_list("x; 0-1").is_err());
        assert!(Graph::parse_edge_list("3; 0+1").is_err());
        assert!(Graph::parse_edge_list("3; 0-3").is_err());
        assert_eq!("A_".parse::<Graph>().unwrap(), Graph::complete(2));
    }

    #[test]
    fn relabel_moves_edges() {
        let p3 = Graph::path(3);
        // old vertex 1 (the middle) becomes new vertex 0
        let r = p3.relabeled(&[1, 0, 2]);
        assert_eq!(r.degree(0), 2);
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::EMPTY;
        s.insert(3);
        s.insert(0);
        assert_eq!(s.to_vec(), vec![0, 3]);
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert!(s.contains(0) && !s.contains(3));
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub(crate) fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (0..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                    move |bits| {
                        let mut g = Graph::empty(n);
                        let mut it = bits.into_iter();
                        for u in 0..n {
                            for v in (u + 1)..n {
                                if it.next().unwrap() {
                                    g.add_edge(u, v);
                                }
                            }
                        }
                        g
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn complement_commutes_with_deletion(g in graph(9), v in 0usize..9) {
                prop_assume!(v < g.order());
                prop_assert_eq!(
                    g.delete_vertex(v).unwrap().complement(),
                    g.complement().delete_vertex(v).unwrap()
                );
            }

            #[test]
            fn graph6_round_trip(g in graph(20)) {
                let s = to_graph6(&g);
                let back = parse_graph6(&s).unwrap();
                prop_assert_eq!(to_graph6(&back), s);
                prop_assert_eq!(back, g);
            }

            #[test]
            fn edge_list_round_trip(g in graph(10)) {
                prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
            }
        }
    }
}
