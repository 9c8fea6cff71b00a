//! Exhaustive search for minimal obstructions within a graph class.
//!
//! A [`ClassUniverse`] holds every graph of the class up to `n_max`, one
//! canonical representative per isomorphism class, together with the indices
//! of its one-vertex-deleted subgraphs in the previous level. All supported
//! classes are hereditary, so those subgraphs are always present. A graph is a
//! minimal obstruction iff none of its deletions is an obstruction and it has
//! no partition itself; a graph with an obstructed deletion is an obstruction
//! without being solved.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::generate::{graph_levels, split_forms};
use crate::graph::{
    canonical_form, CanonicalForm, Graph, MAX_ENUMERATION_ORDER, MAX_SPLIT_ENUMERATION_ORDER,
};
use crate::pattern::PatternMatrix;
use crate::recognize::{is_bipartite, is_chordal, GraphClass};
use crate::solver::solve;

use super::{check_minimality, Minimality, MinimalityCertificate, ObstructionError};

pub fn class_limit(class: GraphClass) -> usize {
    match class {
        GraphClass::Split => MAX_SPLIT_ENUMERATION_ORDER,
        _ => MAX_ENUMERATION_ORDER,
    }
}

struct Entry {
    form: CanonicalForm,
    graph: Graph,
    deletions: Vec<u32>,
}

/// All graphs of a class up to a fixed order, ready for repeated searches.
///
/// Co-bipartite graphs are stored as their bipartite complements; searches
/// run against the complement matrix and complement the results.
pub struct ClassUniverse {
    class: GraphClass,
    n_max: usize,
    levels: Vec<Vec<Entry>>,
}

impl ClassUniverse {
    pub fn build(class: GraphClass, n_max: usize) -> Result<Self, ObstructionError> {
        let limit = class_limit(class);
        if n_max > limit {
            return Err(ObstructionError::TooLarge {
                class,
                n_max,
                limit,
            });
        }
        let forms: Vec<Vec<CanonicalForm>> = match class {
            GraphClass::Split => (0..=n_max).map(split_forms).collect(),
            GraphClass::All => graph_levels(n_max),
            GraphClass::Bipartite | GraphClass::Cobipartite => {
                filtered(n_max, |g| is_bipartite(g).is_some())
            }
            GraphClass::Chordal => filtered(n_max, |g| is_chordal(g).is_some()),
        };
        let mut levels: Vec<Vec<Entry>> = Vec::with_capacity(n_max + 1);
        for (n, level) in forms.into_iter().enumerate() {
            let index: HashMap<&CanonicalForm, u32> = match levels.last() {
                Some(prev) if n > 0 => prev
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (&e.form, i as u32))
                    .collect(),
                _ => HashMap::new(),
            };
            let entries: Vec<Entry> = level
                .into_par_iter()
                .map(|form| {
                    let graph = form.to_graph();
                    let deletions = (0..n)
                        .map(|v| {
                            let sub = canonical_form(&graph.delete_vertex(v).expect("in range"));
                            *index.get(&sub).expect("graph classes are hereditary")
                        })
                        .collect();
                    Entry {
                        form,
                        graph,
                        deletions,
                    }
                })
                .collect();
            levels.push(entries);
        }
        Ok(ClassUniverse {
            class,
            n_max,
            levels,
        })
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of graphs of each order `0..=n_max`.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Every minimal `m`-obstruction in the universe, with certificates.
    /// Uses the ambient rayon pool; the result does not depend on its size.
    pub fn minimal_obstructions(
        &self,
        m: &PatternMatrix,
    ) -> Result<EnumerationReport, ObstructionError> {
        let start = Instant::now();
        let mut report = EnumerationReport {
            matrix: m.clone(),
            class: self.class,
            n_max: self.n_max,
            obstructions: Vec::new(),
            counts: BTreeMap::new(),
            trivial_reason: None,
            stats: SearchStats::default(),
            elapsed: Duration::ZERO,
        };
        if let Some(d) = m.first_diagonal_star() {
            report.trivial_reason = Some(format!(
                "diagonal entry {d} is '*', so every graph is partitionable"
            ));
            report.elapsed = start.elapsed();
            return Ok(report);
        }
        let complemented = self.class == GraphClass::Cobipartite;
        let target = if complemented {
            m.complement()
        } else {
            m.clone()
        };

        let mut found: Vec<Graph> = Vec::new();
        let mut obstructed_prev: Vec<bool> = vec![false; self.levels[0].len()];
        for level in &self.levels[1..] {
            let outcome: Vec<(bool, bool)> = level
                .par_iter()
                .map(|e| {
                    if e.deletions.iter().any(|&d| obstructed_prev[d as usize]) {
                        return Ok((true, false));
                    }
                    let unsolvable = solve(&e.graph, &target, None)?.is_none();
                    Ok((unsolvable, true))
                })
                .collect::<Result<_, ObstructionError>>()?;
            report.stats.candidates += level.len() as u64;
            for (e, &(obstructed, solved)) in level.iter().zip(&outcome) {
                if solved {
                    report.stats.solved += 1;
                    if obstructed {
                        found.push(e.graph.clone());
                    }
                }
            }
            obstructed_prev = outcome.into_iter().map(|(o, _)| o).collect();
        }

        let mut records: Vec<ObstructionRecord> = found
            .into_par_iter()
            .map(|g| {
                let g = if complemented {
                    canonical_form(&g.complement()).to_graph()
                } else {
                    g
                };
                match check_minimality(&g, m)? {
                    Minimality::Minimal(certificate) => Ok(ObstructionRecord {
                        graph6: canonical_form(&g),
                        certificate,
                    }),
                    other => panic!(
                        "search found {g:?} but minimality check says {}",
                        other.status()
                    ),
                }
            })
            .collect::<Result<_, ObstructionError>>()?;
        records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
        for r in &records {
            *report
                .counts
                .entry(r.certificate.graph.order())
                .or_insert(0) += 1;
        }
        report.obstructions = records;
        report.elapsed = start.elapsed();
        Ok(report)
    }
}

fn filtered(n_max: usize, keep: impl Fn(&Graph) -> bool + Sync) -> Vec<Vec<CanonicalForm>> {
    graph_levels(n_max)
        .into_iter()
        .map(|level| {
            level
                .into_par_iter()
                .filter(|f| keep(&f.to_graph()))
                .collect()
        })
        .collect()
}

/// Builds the universe and searches it once.
pub fn enumerate_minimal_obstructions(
    m: &PatternMatrix,
    class: GraphClass,
    n_max: usize,
) -> Result<EnumerationReport, ObstructionError> {
    if m.first_diagonal_star().is_some() {
        let limit = class_limit(class);
        if n_max > limit {
            return Err(ObstructionError::TooLarge {
                class,
                n_max,
                limit,
            });
        }
        // nothing to search; skip building the universe
        let universe = ClassUniverse {
            class,
            n_max,
            levels: vec![Vec::new()],
        };
        return universe.minimal_obstructions(m);
    }
    ClassUniverse::build(class, n_max)?.minimal_obstructions(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub graph6: CanonicalForm,
    pub certificate: MinimalityCertificate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Class members examined, over all orders.
    pub candidates: u64,
    /// Candidates that needed a solver call (no obstructed deletion).
    pub solved: u64,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub matrix: PatternMatrix,
    pub class: GraphClass,
    pub n_max: usize,
    /// Sorted by canonical form, hence by order first.
    pub obstructions: Vec<ObstructionRecord>,
    /// Number of obstructions per order; orders without any are omitted.
    pub counts: BTreeMap<usize, usize>,
    /// Set when the search is skipped because the answer is trivially empty.
    pub trivial_reason: Option<String>,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

impl EnumerationReport {
    pub fn graph6_set(&self) -> Vec<&str> {
        self.obstructions
            .iter()
            .map(|r| r.graph6.as_graph6())
            .collect()
    }

    /// Deterministic JSON document; the elapsed time is left out so that
    /// reruns compare equal.
    pub fn to_json(&self) -> serde_json::Value {
        let obstructions: Vec<serde_json::Value> = self
            .obstructions
            .iter()
            .map(|r| {
                serde_json::json!({
                    "n": r.certificate.graph.order(),
                    "graph6": r.graph6,
                    "certificate_ok": r.certificate.verify().is_ok(),
                    "witnesses": r.certificate.witnesses.iter().map(|w| &w.parts).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "matrix": self.matrix.to_string(),
            "class": self.class,
            "n_max": self.n_max,
            "counts": self.counts,
            "trivial_reason": self.trivial_reason,
            "stats": self.stats,
            "obstructions": obstructions,
        })
    }

    /// Tab-separated table with header `n  graph6  certificate-ok`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tgraph6\tcertificate-ok\n");
        for r in &self.obstructions {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                r.certificate.graph.order(),
                r.graph6,
                r.certificate.verify().is_ok()
            ));
        }
        out
    }
}
