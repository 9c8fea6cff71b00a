//! End-to-end reproduction checks, one row per acceptance criterion.
//!
//! Every row recomputes its expected values from an independent route where
//! one exists (exhaustive counting, brute-force induced subgraph search,
//! factorial arithmetic) instead of trusting the code under test.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{render_enumeration, OutputFormat};
use crate::graph::{
    canonical_form, enumerate_graphs, enumerate_split_graphs, to_graph6, Graph, VertexSet,
};
use crate::obstruction::{
    bipartite_bound, construct_gt, construct_large_split, enumerate_minimal_obstructions,
    is_obstruction, large_split_size, minimality_certificate, split_bound, ClassUniverse,
    EnumerationReport, MinimalityCertificate, ObstructionRecord,
};
use crate::pattern::{PatternEntry, PatternMatrix};
use crate::recognize::{homogeneity_report, is_chordal, is_kl_graph, split_partition, GraphClass};
use crate::solver::{
    count_partitions, solve, solve_split, solve_split_traced, validate, SplitPath,
};

pub const DEFAULT_SEED: u64 = 0x6d70_6172_7431;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Everything, with smaller random suites and the expensive rows trimmed.
    Quick,
    /// Every criterion at its stated scale.
    Full,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub level: Level,
    /// Also certify the 33-vertex construction, with no time limit.
    pub deep: bool,
    pub seed: u64,
    /// Negative control: slip a non-split graph into a split report, which
    /// must make the bound-consistency row fail.
    pub tamper: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            level: Level::Full,
            deep: false,
            seed: DEFAULT_SEED,
            tamper: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub measured: String,
    pub elapsed_ms: u128,
    /// `None` when the row has no time limit.
    pub limit_ms: Option<u128>,
}

impl Row {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} :: {} ({} ms{})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.elapsed_ms,
            self.limit_ms
                .map(|l| format!(" / limit {l} ms"))
                .unwrap_or_default()
        )
    }
}

/// Runs `check`, timing it. The row passes iff the check passes within `limit`.
fn timed(
    id: u32,
    name: &str,
    limit: Option<Duration>,
    check: impl FnOnce() -> (bool, String),
) -> Row {
    let start = Instant::now();
    let (ok, measured) = check();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let measured = if in_time {
        measured
    } else {
        format!("{measured}; over time limit")
    };
    Row {
        id,
        name: name.to_string(),
        passed: ok && in_time,
        measured,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub fn run_all(config: &VerifyConfig) -> Vec<Row> {
    let mut rows = vec![
        odd_cycles(),
        split_characterization(),
        star_free_bounds(),
        asterisk_in_c(),
    ];
    rows.extend(large_split(config));
    rows.extend([
        gt_family(),
        split_homogeneity(config),
        bipartite_homogeneity(config),
        solver_exactness(),
        split_solver_equivalence(config),
        determinism(),
        bound_consistency(config),
    ]);
    rows
}

/// Per-case random stream: reproducible and independent of scheduling.
pub fn case_rng(master: u64, suite: u32, case: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(u64::from(suite) << 32 | u64::from(case));
    rng
}

/// Independent checks on a finished report. Returns the problems found.
pub fn audit_report(report: &EnumerationReport) -> Vec<String> {
    let mut problems = Vec::new();
    let mut seen = BTreeSet::new();
    for r in &report.obstructions {
        let g = &r.certificate.graph;
        let label = r.graph6.as_graph6();
        if !report.class.contains(g) {
            problems.push(format!("{label} is not {}", report.class));
        }
        if g.order() > report.n_max {
            problems.push(format!("{label} exceeds n_max"));
        }
        if r.certificate.matrix != report.matrix {
            problems.push(format!("{label} certifies a different matrix"));
        }
        if let Err(e) = r.certificate.verify() {
            problems.push(format!("{label}: {e}"));
        }
        if !seen.insert(canonical_form(g)) {
            problems.push(format!("{label} is listed twice up to isomorphism"));
        }
    }
    let total: usize = report.counts.values().sum();
    if total != report.obstructions.len() {
        problems.push("counts disagree with the obstruction list".into());
    }
    problems
}

fn forms_of(graphs: &[Graph]) -> Vec<String> {
    let mut v: Vec<String> = graphs
        .iter()
        .map(|g| canonical_form(g).to_string())
        .collect();
    v.sort();
    v
}

fn report_forms(report: &EnumerationReport) -> Vec<String> {
    report.graph6_set().into_iter().map(String::from).collect()
}

fn two_k2() -> Graph {
    Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
}

pub fn odd_cycles() -> Row {
    timed(
        1,
        "odd cycles are the minimal non-bipartite graphs (n <= 7)",
        secs(10),
        || {
            let m = PatternMatrix::kl(2, 0).unwrap();
            let report = match enumerate_minimal_obstructions(&m, GraphClass::All, 7) {
                Ok(r) => r,
                Err(e) => return (false, e.to_string()),
            };
            let expected = forms_of(&[3, 5, 7].map(|n| Graph::cycle(n).unwrap()));
            let got = report_forms(&report);
            let problems = audit_report(&report);
            (
                got == expected && problems.is_empty(),
                format!("found {got:?}, expected {expected:?}, audit {problems:?}"),
            )
        },
    )
}

/// Minimal obstructions of `m` among all graphs up to `n_max`, by counting.
fn counted_minimal(m: &PatternMatrix, n_max: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| enumerate_graphs(n).unwrap())
        .filter(|g| {
            count_partitions(g, m).unwrap() == 0
                && (0..g.order())
                    .all(|v| count_partitions(&g.delete_vertex(v).unwrap(), m).unwrap() > 0)
        })
        .map(|g| to_graph6(&g))
        .collect();
    out.sort();
    out
}

pub fn split_characterization() -> Row {
    timed(
        2,
        "split obstructions are 2K2, C4, C5 (n <= 6)",
        secs(30),
        || {
            let m = PatternMatrix::kl(1, 1).unwrap();
            let report = match enumerate_minimal_obstructions(&m, GraphClass::All, 6) {
                Ok(r) => r,
                Err(e) => return (false, e.to_string()),
            };
            let expected =
                forms_of(&[two_k2(), Graph::cycle(4).unwrap(), Graph::cycle(5).unwrap()]);
            let oracle = counted_minimal(&m, 6);
            let got = report_forms(&report);
            let problems = audit_report(&report);
            (
                got == expected && oracle == expected && problems.is_empty(),
                format!("found {got:?}, counting oracle {oracle:?}, audit {problems:?}"),
            )
        },
    )
}

pub fn star_free_bounds() -> Row {
    timed(
        3,
        "star-free 2x2 obstructions have at most (k+1)(l+1) vertices (n <= 6)",
        secs(120),
        || {
            let universe = ClassUniverse::build(GraphClass::All, 6).unwrap();
            let mut ok = true;
            let mut notes = Vec::new();
            for diag in ["01", "10", "00", "11"] {
                for off in ['0', '1'] {
                    let d: Vec<char> = diag.chars().collect();
                    let m: PatternMatrix = format!("{}{off};{off}{}", d[0], d[1]).parse().unwrap();
                    let c = m.diag_counts();
                    let bound = (c.zeros + 1) * (c.ones + 1);
                    let report = universe.minimal_obstructions(&m).unwrap();
                    let largest = report.counts.keys().max().copied().unwrap_or(0);
                    let mixed = c.zeros == 1 && c.ones == 1;
                    let fine = largest <= bound
                        && (!mixed || largest <= 4)
                        && audit_report(&report).is_empty();
                    ok &= fine;
                    notes.push(format!("{m}: max {largest} <= {bound}"));
                }
            }
            (ok, notes.join(", "))
        },
    )
}

/// Diagonal-star-free symmetric matrices of the given order.
fn star_free_diagonal(order: usize) -> impl Iterator<Item = PatternMatrix> {
    PatternMatrix::all_symmetric(order).filter(|m| m.first_diagonal_star().is_none())
}

pub fn asterisk_in_c() -> Row {
    timed(
        4,
        "a star in block C gives a direct split witness (n <= 8)",
        secs(120),
        || {
            let matrices: Vec<PatternMatrix> = star_free_diagonal(2)
                .chain(star_free_diagonal(3))
                .filter(|m| m.block_c_has_star().unwrap())
                .collect();
            let graphs: Vec<Graph> = (0..=8)
                .flat_map(|n| enumerate_split_graphs(n).unwrap())
                .collect();
            let failures: usize = graphs
                .par_iter()
                .map(|g| {
                    matrices
                        .iter()
                        .filter(|m| {
                            let s = solve_split_traced(g, m).unwrap();
                            let direct = matches!(s.path, SplitPath::StarInC { .. });
                            !(direct && s.assignment.is_some_and(|w| validate(g, m, &w).unwrap()))
                        })
                        .count()
                })
                .sum();
            (
                failures == 0,
                format!(
                    "{} graphs x {} matrices, {failures} failures",
                    graphs.len(),
                    matrices.len()
                ),
            )
        },
    )
}

fn large_split_instance(n: usize) -> (bool, String) {
    let c = construct_large_split(n).unwrap();
    let size = c.graph.order();
    let expected = 4 * n + 1 + central_binomial(n) as usize;
    let split = split_partition(&c.graph).is_some();
    let obstruction = is_obstruction(&c.graph, &c.matrix).unwrap();
    let certificate = minimality_certificate(&c.graph, &c.matrix).unwrap();
    let verified = certificate
        .as_ref()
        .map(|cert| cert.verify().is_ok())
        .unwrap_or(false);
    (
        size == expected && split && obstruction && verified,
        format!("{size} vertices (expected {expected}), split {split}, obstruction {obstruction}, certificate {verified}"),
    )
}

/// `(2n)! / (n!)^2` by factorials, independent of the library's binomial.
fn central_binomial(n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    fact(2 * n) / (fact(n) * fact(n))
}

pub fn large_split(config: &VerifyConfig) -> Vec<Row> {
    let mut rows = vec![timed(
        5,
        "large split obstruction n=1 is a minimal obstruction",
        secs(1),
        || large_split_instance(1),
    )];
    if config.level == Level::Full {
        rows.push(timed(
            5,
            "large split obstruction n=2 is a minimal obstruction",
            secs(60),
            || large_split_instance(2),
        ));
    }
    rows.push(timed(
        5,
        "large split obstruction sizes 4n+1+C(2n,n) for n <= 10",
        secs(1),
        || {
            let bad: Vec<usize> = (1..=10)
                .filter(|&n| {
                    large_split_size(n).ok() != Some(4 * n as u128 + 1 + central_binomial(n))
                })
                .collect();
            (bad.is_empty(), format!("mismatches at {bad:?}"))
        },
    ));
    if config.deep {
        rows.push(timed(
            5,
            "large split obstruction n=3 is a minimal obstruction (deep)",
            None,
            || large_split_instance(3),
        ));
    }
    rows
}

/// Two edges with no edge between their endpoints, by brute force.
fn has_induced_2k2(g: &Graph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    edges.iter().enumerate().any(|(i, &(a, b))| {
        edges[i + 1..].iter().any(|&(c, d)| {
            [a, b]
                .iter()
                .all(|&x| x != c && x != d && !g.has_edge(x, c) && !g.has_edge(x, d))
        })
    })
}

fn minimal_and_verified(g: &Graph, m: &PatternMatrix) -> bool {
    minimality_certificate(g, m)
        .unwrap()
        .is_some_and(|c: MinimalityCertificate| c.verify().is_ok())
}

pub fn gt_family() -> Row {
    timed(6, "G(t) family and complements, t = 3..6", secs(60), || {
        let m = PatternMatrix::m_kt(3, 1).unwrap();
        let mc = m.complement();
        let mut notes = Vec::new();
        let mut ok = true;
        for t in 3..=6 {
            let g = construct_gt(t).unwrap();
            let gc = g.complement();
            let checks = [
                is_chordal(&g).is_some(),
                has_induced_2k2(&g),
                is_kl_graph(&g, 3, 0).unwrap().is_some(),
                is_kl_graph(&g, 2, 1).unwrap().is_some(),
                minimal_and_verified(&g, &m),
                is_kl_graph(&gc, 1, 2).unwrap().is_some(),
                is_kl_graph(&gc, 0, 3).unwrap().is_some(),
                minimal_and_verified(&gc, &mc),
            ];
            let passed = checks.iter().filter(|&&c| c).count();
            ok &= passed == checks.len();
            notes.push(format!("t={t}: {passed}/{}", checks.len()));
        }
        (ok, notes.join(", "))
    })
}

fn suite_size(config: &VerifyConfig) -> u32 {
    match config.level {
        Level::Full => 1000,
        Level::Quick => 200,
    }
}

fn random_entry(rng: &mut ChaCha8Rng, star: bool) -> PatternEntry {
    let choices = if star { 3 } else { 2 };
    PatternEntry::ALL[rng.random_range(0..choices)]
}

/// Random split graph: a clique of `c` vertices first, then `n - c`
/// independent vertices, cross edges with probability `p`.
fn random_split(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Graph {
    let p: f64 = rng.random();
    let mut edges = Vec::new();
    for u in 0..c {
        for v in u + 1..c {
            edges.push((u, v));
        }
        for v in c..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

struct SuiteOutcome {
    checked: usize,
    violations: usize,
    rejected: usize,
}

fn run_suite(
    config: &VerifyConfig,
    suite: u32,
    case: impl Fn(&mut ChaCha8Rng) -> Option<(usize, usize)> + Sync,
) -> SuiteOutcome {
    let results: Vec<(usize, usize, usize)> = (0..suite_size(config))
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(config.seed, suite, i);
            let mut rejected = 0;
            loop {
                match case(&mut rng) {
                    Some((parts, violations)) => return (parts, violations, rejected),
                    None => rejected += 1,
                }
            }
        })
        .collect();
    SuiteOutcome {
        checked: results.iter().map(|r| r.0).sum(),
        violations: results.iter().map(|r| r.1).sum(),
        rejected: results.iter().map(|r| r.2).sum(),
    }
}

/// `units` names what a case checks and what counts as a failure.
fn suite_row(
    id: u32,
    name: &str,
    config: &VerifyConfig,
    suite: u32,
    units: (&str, &str),
    case: impl Fn(&mut ChaCha8Rng) -> Option<(usize, usize)> + Sync,
) -> Row {
    timed(id, name, secs(120), || {
        let o = run_suite(config, suite, case);
        (
            o.violations == 0,
            format!(
                "{} instances, {} {} checked, {} {}, {} rejected draws",
                suite_size(config),
                o.checked,
                units.0,
                o.violations,
                units.1,
                o.rejected
            ),
        )
    })
}

/// Counts parts whose largest homogeneous class is below `need(|P|)`.
fn check_parts(
    g: &Graph,
    parts: impl Iterator<Item = VertexSet>,
    ok: impl Fn(usize, usize) -> bool,
) -> (usize, usize) {
    let mut checked = 0;
    let mut violations = 0;
    for p in parts.filter(|p| !p.is_empty()) {
        let report = homogeneity_report(g, p).expect("parts of zero-diagonal rows are independent");
        checked += 1;
        if !ok(report.max_class_size, p.len()) {
            violations += 1;
        }
    }
    (checked, violations)
}

pub fn split_homogeneity(config: &VerifyConfig) -> Row {
    suite_row(
        7,
        "parts of split A-partitions have large homogeneous sets",
        config,
        2,
        ("parts", "violations"),
        |rng| {
            let n = rng.random_range(1..=24);
            let k = rng.random_range(1..=4usize);
            let c = rng.random_range(0..=n.min(k + 1));
            let g = random_split(rng, n, c);
            let a = PatternMatrix::from_fn(k, |i, j| {
                if i == j {
                    PatternEntry::Zero
                } else {
                    random_entry(rng, true)
                }
            });
            let w = solve(&g, &a, None).unwrap()?;
            // ceil((|P|-1) / 2^(k-1)) <= max class  <=>  (|P|-1) <= max class * 2^(k-1)
            Some(check_parts(
                &g,
                (0..k).map(|i| w.members(i)),
                |max, size| size - 1 <= max << (k - 1),
            ))
        },
    )
}

pub fn bipartite_homogeneity(config: &VerifyConfig) -> Row {
    suite_row(
        8,
        "A-parts of bipartite partitions have large homogeneous sets",
        config,
        4,
        ("parts", "violations"),
        |rng| {
            let n = rng.random_range(1..=16);
            let k = rng.random_range(1..=3usize);
            let ell = rng.random_range(0..=2usize);
            let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let p: f64 = rng.random();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if side[u] != side[v] && rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let m = PatternMatrix::from_fn(k + ell, |i, j| match (i < k, j < k) {
                _ if i == j => {
                    if i < k {
                        PatternEntry::Zero
                    } else {
                        PatternEntry::One
                    }
                }
                (true, true) => random_entry(rng, false),
                _ => random_entry(rng, true),
            });
            let w = solve(&g, &m, None).unwrap()?;
            Some(check_parts(
                &g,
                (0..k).map(|i| w.members(i)),
                |max, size| size <= max << (2 * ell),
            ))
        },
    )
}

pub fn solver_exactness() -> Row {
    timed(
        9,
        "solve agrees with exhaustive counting (n <= 5, all 3x3)",
        secs(300),
        || {
            let graphs: Vec<Graph> = (0..=5).flat_map(|n| enumerate_graphs(n).unwrap()).collect();
            let matrices: Vec<PatternMatrix> = PatternMatrix::all_symmetric(3).collect();
            let disagreements: usize = graphs
                .par_iter()
                .map(|g| {
                    matrices
                        .iter()
                        .filter(|m| {
                            let found = solve(g, m, None).unwrap();
                            let sound = found.as_ref().map_or(true, |w| validate(g, m, w).unwrap());
                            !sound || found.is_some() != (count_partitions(g, m).unwrap() > 0)
                        })
                        .count()
                })
                .sum();
            (
                disagreements == 0,
                format!(
                    "{} graphs x {} matrices, {disagreements} disagreements",
                    graphs.len(),
                    matrices.len()
                ),
            )
        },
    )
}

pub fn split_solver_equivalence(config: &VerifyConfig) -> Row {
    suite_row(
        10,
        "solve_split agrees with solve on random split instances",
        config,
        10,
        ("pairs", "disagreements"),
        |rng| {
            let n = rng.random_range(1..=14);
            let c = rng.random_range(0..=n);
            let g = random_split(rng, n, c);
            let order = rng.random_range(1..=4);
            let m = PatternMatrix::from_fn(order, |i, j| random_entry(rng, i != j));
            let fast = solve_split(&g, &m).unwrap();
            let slow = solve(&g, &m, None).unwrap();
            let sound = fast.as_ref().map_or(true, |w| validate(&g, &m, w).unwrap());
            Some((1, usize::from(!sound || fast.is_some() != slow.is_some())))
        },
    )
}

/// Renders the odd-cycle enumeration through the CLI output path at two pool
/// sizes and compares the bytes.
pub fn determinism() -> Row {
    timed(
        11,
        "enumerate output is identical for 1 and 8 workers",
        secs(60),
        || {
            let m = PatternMatrix::kl(2, 0).unwrap();
            let render = |jobs| {
                crate::with_jobs(jobs, || {
                    let report = enumerate_minimal_obstructions(&m, GraphClass::All, 7).unwrap();
                    (
                        render_enumeration(&report, OutputFormat::Json),
                        render_enumeration(&report, OutputFormat::Tsv),
                    )
                })
            };
            let one = render(1);
            let eight = render(8);
            (
                one == eight,
                format!("{} JSON bytes, equal {}", one.0.len(), one == eight),
            )
        },
    )
}

fn tampered(report: &mut EnumerationReport) {
    let c4 = Graph::cycle(4).unwrap();
    let m = report.matrix.clone();
    let certificate = minimality_certificate(&c4, &m)
        .unwrap()
        .expect("C4 is a minimal split obstruction");
    report.obstructions.push(ObstructionRecord {
        graph6: canonical_form(&c4),
        certificate,
    });
    *report.counts.entry(4).or_insert(0) += 1;
}

pub fn bound_consistency(config: &VerifyConfig) -> Row {
    let (split_n, bip_n) = match config.level {
        Level::Full => (9, 8),
        Level::Quick => (8, 7),
    };
    timed(
        12,
        "split and bipartite obstructions respect their size bounds",
        secs(600),
        || {
            let split = ClassUniverse::build(GraphClass::Split, split_n).unwrap();
            let bipartite = ClassUniverse::build(GraphClass::Bipartite, bip_n).unwrap();
            let split_kl = PatternMatrix::kl(1, 1).unwrap();
            let matrices: Vec<PatternMatrix> =
                star_free_diagonal(2).chain(star_free_diagonal(3)).collect();
            let mut problems = Vec::new();
            let (mut found_split, mut found_bip, mut largest_split, mut largest_bip) = (0, 0, 0, 0);
            for m in &matrices {
                let d = m.diag_counts();
                let mut s = split.minimal_obstructions(m).unwrap();
                if config.tamper && *m == split_kl {
                    tampered(&mut s);
                }
                let b = bipartite.minimal_obstructions(m).unwrap();
                let b1 = split_bound(d.zeros, d.ones).unwrap().value;
                let b4 = bipartite_bound(d.zeros, d.ones).unwrap();
                for (report, bound) in [(&s, b1), (&b, b4)] {
                    problems.extend(
                        audit_report(report)
                            .into_iter()
                            .map(|p| format!("{m}: {p}")),
                    );
                    if let Some(&top) = report.counts.keys().max() {
                        if top as u128 > bound {
                            problems
                                .push(format!("{m} {}: order {top} > bound {bound}", report.class));
                        }
                    }
                }
                found_split += s.obstructions.len();
                found_bip += b.obstructions.len();
                largest_split = largest_split.max(s.counts.keys().max().copied().unwrap_or(0));
                largest_bip = largest_bip.max(b.counts.keys().max().copied().unwrap_or(0));
            }
            (
            problems.is_empty(),
            format!(
                "{} matrices; split n<={split_n}: {found_split} obstructions, largest {largest_split}; \
                 bipartite n<={bip_n}: {found_bip} obstructions, largest {largest_bip}; problems {problems:?}",
                matrices.len()
            ),
        )
        },
    )
}
