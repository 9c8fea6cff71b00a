//! The `mpart` command line.
//!
//! Exit codes: 0 success, 1 a legitimate negative answer (no partition, not
//! a member, a failed verification row), 2 usage or input errors, 3 timeout.
//! Results go to stdout in the selected format; diagnostics go to stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::graph::{to_graph6, Graph};
use crate::obstruction::{
    bipartite_bound, check_minimality, construct_gt, construct_large_split,
    enumerate_minimal_obstructions, split_bound, star_free_bound, write_catalog, EnumerationReport,
    Minimality,
};
use crate::pattern::PatternMatrix;
use crate::recognize::{is_bipartite, is_chordal, is_cobipartite, split_partition, GraphClass};
use crate::solver::{solve, ListConstraint};
use crate::verify::{self, Level, VerifyConfig, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "mpart",
    version,
    about = "Exact matrix partition solver and obstruction search"
)]
pub struct Cli {
    /// Worker threads for enumeration and property suites.
    #[arg(long, global = true, env = "MPART_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Wall-clock budget in seconds; exceeding it exits with code 3.
    #[arg(long, global = true)]
    timeout: Option<f64>,
    /// Output format (default: json; tsv for verify).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find an M-partition of a graph.
    Solve {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        graph: GraphSource,
        /// Allowed parts per vertex, e.g. "0,1;1;0".
        #[arg(long)]
        lists: Option<String>,
    },
    /// Decide whether a graph is a minimal obstruction, with a certificate.
    CheckMinimal {
        #[command(flatten)]
        matrix: MatrixSource,
        #[command(flatten)]
        graph: GraphSource,
    },
    /// List all minimal obstructions of a class up to an order.
    Enumerate {
        #[command(flatten)]
        matrix: MatrixSource,
        #[arg(long, default_value = "all")]
        class: GraphClass,
        #[arg(long = "max-n")]
        max_n: usize,
        /// Catalog root directory.
        #[arg(long, default_value = "data")]
        out: PathBuf,
        /// Do not write catalog files.
        #[arg(long)]
        no_catalog: bool,
    },
    /// Build one of the explicit constructions.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Test membership in a graph class.
    Recognize {
        #[arg(long)]
        class: GraphClass,
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Print the size bounds for a matrix.
    Bounds {
        #[command(flatten)]
        matrix: MatrixSource,
    },
    /// Run the reproduction checks and print one row per criterion.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Include the 33-vertex construction.
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Negative control: corrupt one report; the bound row must fail.
        #[arg(long)]
        tamper: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
enum Construction {
    /// The matrix M_{k,t}.
    Mkt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// The split obstruction for M_{2n+1,n}.
    LargeSplit {
        #[arg(long)]
        n: usize,
    },
    /// The chordal graph G(t).
    Gt {
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct MatrixSource {
    /// Matrix text, rows separated by ';', e.g. "0*;*1".
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    matrix_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    #[arg(long)]
    graph6: Option<String>,
    /// Edge list "n; u-v, u-v, ...".
    #[arg(long)]
    edges: Option<String>,
    /// File holding a graph6 string or an edge list.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

impl MatrixSource {
    fn load(&self) -> Result<PatternMatrix, String> {
        let text = match (&self.matrix, &self.matrix_file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => {
                std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?
            }
            (None, None) => unreachable!("clap requires a matrix source"),
        };
        text.trim().parse().map_err(|e| format!("matrix: {e}"))
    }
}

impl GraphSource {
    fn load(&self) -> Result<Graph, String> {
        let parsed = match (&self.graph6, &self.edges, &self.graph_file) {
            (Some(s), _, _) => crate::graph::parse_graph6(s.trim()),
            (_, Some(s), _) => Graph::parse_edge_list(s),
            (_, _, Some(p)) => {
                let text =
                    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                Graph::from_str(text.trim())
            }
            _ => unreachable!("clap requires a graph source"),
        };
        parsed.map_err(|e| format!("graph: {e}"))
    }
}

/// What a command produced, before it is written out.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the exit code.
pub fn run(
    args: impl IntoIterator<Item = OsString>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let timeout = cli.timeout;
    if let Some(t) = timeout {
        if !(t.is_finite() && t > 0.0) {
            let _ = writeln!(
                stderr,
                "error: --timeout must be a positive number of seconds"
            );
            return EXIT_INPUT;
        }
    }
    let outcome = match timeout {
        None => execute(cli),
        Some(t) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(execute(cli));
            });
            match rx.recv_timeout(Duration::from_secs_f64(t)) {
                Ok(outcome) => outcome,
                Err(_) => Outcome {
                    code: EXIT_TIMEOUT,
                    stdout: String::new(),
                    stderr: format!("indeterminate: no answer within {t} s\n"),
                },
            }
        }
    };
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    let _ = stdout.flush();
    outcome.code
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn execute(cli: Cli) -> Outcome {
    let jobs = cli.jobs.map_or_else(default_jobs, |j| j as usize);
    let format = cli.format;
    crate::with_jobs(jobs, move || match dispatch(cli.command, format) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::input_error(message),
    })
}

fn json_line(value: serde_json::Value) -> String {
    serde_json::to_string(&value).expect("json values serialize") + "\n"
}

fn dispatch(command: Command, format: Option<OutputFormat>) -> Result<Outcome, String> {
    let fmt = format.unwrap_or(OutputFormat::Json);
    match command {
        Command::Solve {
            matrix,
            graph,
            lists,
        } => {
            let m = matrix.load()?;
            let g = graph.load()?;
            let lists = lists
                .map(|l| ListConstraint::parse(&l))
                .transpose()
                .map_err(|e| e.to_string())?;
            let found = solve(&g, &m, lists.as_ref()).map_err(|e| e.to_string())?;
            let stdout = match (&found, fmt) {
                (Some(w), OutputFormat::Json) => json_line(json!({ "parts": w.parts })),
                (None, OutputFormat::Json) => json_line(json!({ "result": "no-partition" })),
                (Some(w), OutputFormat::Tsv) => w.parts.iter().enumerate().fold(
                    String::from("vertex\tpart\n"),
                    |mut s, (v, p)| {
                        let _ = writeln!(s, "{v}\t{p}");
                        s
                    },
                ),
                (None, OutputFormat::Tsv) => "result\nno-partition\n".to_string(),
            };
            Ok(Outcome {
                code: if found.is_some() {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                stdout,
                stderr: String::new(),
            })
        }
        Command::CheckMinimal { matrix, graph } => {
            let m = matrix.load()?;
            let g = graph.load()?;
            let outcome = check_minimality(&g, &m).map_err(|e| e.to_string())?;
            let status = outcome.status();
            let (code, detail) = match &outcome {
                Minimality::Partitionable(w) => {
                    (EXIT_NEGATIVE, json!({ "witness": { "parts": w.parts } }))
                }
                Minimality::NotMinimal { vertex } => {
                    (EXIT_NEGATIVE, json!({ "obstructed_deletion": vertex }))
                }
                Minimality::Minimal(cert) => (
                    EXIT_OK,
                    json!({
                        "certificate": cert,
                        "certificate_ok": cert.verify().is_ok(),
                    }),
                ),
            };
            let stdout = match fmt {
                OutputFormat::Json => {
                    let mut value = json!({ "status": status });
                    value
                        .as_object_mut()
                        .unwrap()
                        .extend(detail.as_object().unwrap().clone());
                    json_line(value)
                }
                OutputFormat::Tsv => format!("status\n{status}\n"),
            };
            Ok(Outcome {
                code,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Enumerate {
            matrix,
            class,
            max_n,
            out,
            no_catalog,
        } => {
            let m = matrix.load()?;
            let report =
                enumerate_minimal_obstructions(&m, class, max_n).map_err(|e| e.to_string())?;
            let mut stderr = count_table(&report);
            if !no_catalog {
                let dir =
                    write_catalog(&report, &out).map_err(|e| format!("writing catalog: {e}"))?;
                let _ = writeln!(stderr, "catalog: {}", dir.display());
            }
            Ok(Outcome {
                code: EXIT_OK,
                stdout: render_enumeration(&report, fmt),
                stderr,
            })
        }
        Command::Construct { which } => construct(which, fmt),
        Command::Recognize { class, graph } => {
            let g = graph.load()?;
            let witness = match class {
                GraphClass::All => Some(json!({})),
                GraphClass::Split => split_partition(&g)
                    .map(|s| json!({ "clique": s.clique, "independent": s.independent })),
                GraphClass::Bipartite => is_bipartite(&g).map(|c| json!({ "colors": c })),
                GraphClass::Cobipartite => is_cobipartite(&g).map(|c| json!({ "colors": c })),
                GraphClass::Chordal => is_chordal(&g).map(|o| json!({ "elimination_order": o })),
            };
            let member = witness.is_some();
            let stdout = match fmt {
                OutputFormat::Json => {
                    json_line(json!({ "class": class, "member": member, "witness": witness }))
                }
                OutputFormat::Tsv => format!("class\tmember\n{class}\t{member}\n"),
            };
            Ok(Outcome {
                code: if member { EXIT_OK } else { EXIT_NEGATIVE },
                stdout,
                stderr: String::new(),
            })
        }
        Command::Bounds { matrix } => {
            let m = matrix.load()?;
            let d = m.diag_counts();
            if d.stars > 0 {
                return Err("bounds need a matrix without '*' on the diagonal".into());
            }
            let t1 = split_bound(d.zeros, d.ones).map_err(|e| e.to_string())?;
            let t4 = bipartite_bound(d.zeros, d.ones).ok();
            let star_free = if m.is_star_free() {
                star_free_bound(d.zeros, d.ones).ok()
            } else {
                None
            };
            let value = json!({
                "matrix": m.to_string(),
                "k": d.zeros,
                "ell": d.ones,
                "split": t1.value.to_string(),
                "split_swapped": t1.swapped,
                "bipartite": t4.map(|v| v.to_string()),
                "star_free": star_free.map(|v| v.to_string()),
            });
            let stdout = match fmt {
                OutputFormat::Json => json_line(value),
                OutputFormat::Tsv => tsv_pairs(&value),
            };
            Ok(Outcome {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Verify {
            level,
            deep,
            seed,
            tamper,
        } => {
            let config = VerifyConfig {
                level: match level {
                    LevelArg::Quick => Level::Quick,
                    LevelArg::Full => Level::Full,
                },
                deep,
                seed,
                tamper,
            };
            let rows = verify::run_all(&config);
            let all = rows.iter().all(|r| r.passed);
            let stdout = match format.unwrap_or(OutputFormat::Tsv) {
                OutputFormat::Json => json_line(json!({ "passed": all, "rows": rows })),
                OutputFormat::Tsv => rows.iter().fold(
                    String::from("id\tstatus\tname\tmeasured\telapsed_ms\n"),
                    |mut s, r| {
                        let status = if r.passed { "PASS" } else { "FAIL" };
                        let _ = writeln!(
                            s,
                            "{}\t{status}\t{}\t{}\t{}",
                            r.id, r.name, r.measured, r.elapsed_ms
                        );
                        s
                    },
                ),
            };
            Ok(Outcome {
                code: if all { EXIT_OK } else { EXIT_NEGATIVE },
                stdout,
                stderr: String::new(),
            })
        }
    }
}

fn construct(which: Construction, fmt: OutputFormat) -> Result<Outcome, String> {
    let value = match which {
        Construction::Mkt { k, t } => {
            let m = PatternMatrix::m_kt(k, t).map_err(|e| e.to_string())?;
            json!({ "construction": "mkt", "k": k, "t": t, "matrix": m.to_string(), "rows": m.rows() })
        }
        Construction::LargeSplit { n } => {
            let c = construct_large_split(n).map_err(|e| e.to_string())?;
            json!({
                "construction": "large-split",
                "n": n,
                "graph6": to_graph6(&c.graph),
                "vertices": c.graph.order(),
                "matrix": c.matrix.to_string(),
                "special": c.special,
                "clique": c.clique,
                "mates": c.mates,
                "subsets": c.subsets,
            })
        }
        Construction::Gt { t } => {
            let g = construct_gt(t).map_err(|e| e.to_string())?;
            json!({
                "construction": "gt",
                "t": t,
                "graph6": to_graph6(&g),
                "vertices": g.order(),
                "path": (0..2 * t).collect::<Vec<_>>(),
                "apex": 2 * t,
                "chordal": is_chordal(&g).is_some(),
            })
        }
    };
    let stdout = match fmt {
        OutputFormat::Json => json_line(value),
        OutputFormat::Tsv => tsv_pairs(&value),
    };
    Ok(Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

/// `key<TAB>value` lines for the top-level fields of a JSON object.
fn tsv_pairs(value: &serde_json::Value) -> String {
    let mut out = String::from("key\tvalue\n");
    for (k, v) in value.as_object().expect("object") {
        let text = match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(out, "{k}\t{text}");
    }
    out
}

/// The stdout rendering of an enumeration; free of timing information.
pub fn render_enumeration(report: &EnumerationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json_line(report.to_json()),
        OutputFormat::Tsv => report.to_tsv(),
    }
}

fn count_table(report: &EnumerationReport) -> String {
    let mut s = String::new();
    if let Some(reason) = &report.trivial_reason {
        let _ = writeln!(s, "trivial: {reason}");
    }
    let _ = writeln!(s, "order\tcount");
    for (n, c) in &report.counts {
        let _ = writeln!(s, "{n}\t{c}");
    }
    let _ = writeln!(
        s,
        "total {} obstructions; {} candidates, {} solved; {:.3} s",
        report.obstructions.len(),
        report.stats.candidates,
        report.stats.solved,
        report.elapsed.as_secs_f64()
    );
    s
}
