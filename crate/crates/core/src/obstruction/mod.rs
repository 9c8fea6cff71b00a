//! Obstructions, minimality certificates, exhaustive enumeration of minimal
//! obstructions inside a graph class, explicit constructions and closed-form
//! size bounds.

mod bounds;
mod catalog;
mod construct;
mod enumerate;

pub use bounds::{
    binomial, bipartite_bound, large_split_size, split_bound, star_free_bound, Bound,
};
pub use catalog::{write_catalog, CatalogManifest, MANIFEST_FILE};
pub use construct::{construct_gt, construct_large_split, LargeSplitConstruction, SubsetVertex};
pub use enumerate::{
    class_limit, enumerate_minimal_obstructions, ClassUniverse, EnumerationReport,
    ObstructionRecord, SearchStats,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::pattern::{PatternError, PatternMatrix};
use crate::recognize::GraphClass;
use crate::solver::{
    count_partitions, solve, validate, PartAssignment, SolveError, COUNT_MAX_PARTS,
    COUNT_MAX_VERTICES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("{class} enumeration is limited to n <= {limit}, got {n_max}")]
    TooLarge {
        class: GraphClass,
        n_max: usize,
        limit: usize,
    },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

pub fn is_obstruction(g: &Graph, m: &PatternMatrix) -> Result<bool, SolveError> {
    Ok(solve(g, m, None)?.is_none())
}

/// Proof that `graph` is a minimal `matrix`-obstruction: one witness
/// partition of `graph - v` for every vertex `v`, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub matrix: PatternMatrix,
    pub graph: Graph,
    pub witnesses: Vec<PartAssignment>,
}

/// How [`MinimalityCertificate::verify`] confirmed that the whole graph has
/// no partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refutation {
    /// Exhaustive count over all `m^n` assignments returned zero.
    Counted,
    /// Too large to count; the backtracking solver found nothing.
    Searched,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateDefect {
    #[error("expected {expected} witnesses, found {got}")]
    WitnessCount { expected: usize, got: usize },
    #[error("witness for deleted vertex {vertex} is not a partition")]
    InvalidWitness { vertex: usize },
    #[error("the graph itself is partitionable")]
    Partitionable,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl MinimalityCertificate {
    /// Re-checks the certificate from scratch. Every witness goes through
    /// [`validate`]; non-partitionability is confirmed by exhaustive counting
    /// whenever the instance is small enough.
    pub fn verify(&self) -> Result<Refutation, CertificateDefect> {
        let n = self.graph.order();
        if self.witnesses.len() != n {
            return Err(CertificateDefect::WitnessCount {
                expected: n,
                got: self.witnesses.len(),
            });
        }
        for (v, w) in self.witnesses.iter().enumerate() {
            let sub = self
                .graph
                .delete_vertex(v)
                .expect("vertex index is in range");
            if !matches!(validate(&sub, &self.matrix, w), Ok(true)) {
                return Err(CertificateDefect::InvalidWitness { vertex: v });
            }
        }
        if n <= COUNT_MAX_VERTICES && self.matrix.order() <= COUNT_MAX_PARTS {
            if count_partitions(&self.graph, &self.matrix)? != 0 {
                return Err(CertificateDefect::Partitionable);
            }
            Ok(Refutation::Counted)
        } else {
            if solve(&self.graph, &self.matrix, None)?.is_some() {
                return Err(CertificateDefect::Partitionable);
            }
            Ok(Refutation::Searched)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minimality {
    Partitionable(PartAssignment),
    /// An obstruction, but `graph - vertex` is one too.
    NotMinimal {
        vertex: usize,
    },
    Minimal(MinimalityCertificate),
}

impl Minimality {
    pub fn status(&self) -> &'static str {
        match self {
            Minimality::Partitionable(_) => "partitionable",
            Minimality::NotMinimal { .. } => "obstruction-not-minimal",
            Minimality::Minimal(_) => "minimal-obstruction",
        }
    }
}

pub fn check_minimality(g: &Graph, m: &PatternMatrix) -> Result<Minimality, SolveError> {
    if let Some(w) = solve(g, m, None)? {
        return Ok(Minimality::Partitionable(w));
    }
    let mut witnesses = Vec::with_capacity(g.order());
    for v in 0..g.order() {
        let sub = g.delete_vertex(v).expect("vertex index is in range");
        match solve(&sub, m, None)? {
            Some(w) => witnesses.push(w),
            None => return Ok(Minimality::NotMinimal { vertex: v }),
        }
    }
    Ok(Minimality::Minimal(MinimalityCertificate {
        matrix: m.clone(),
        graph: g.clone(),
        witnesses,
    }))
}

pub fn minimality_certificate(
    g: &Graph,
    m: &PatternMatrix,
) -> Result<Option<MinimalityCertificate>, SolveError> {
    Ok(match check_minimality(g, m)? {
        Minimality::Minimal(cert) => Some(cert),
        _ => None,
    })
}
