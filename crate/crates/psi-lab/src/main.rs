//! Command-line front end: every solver operation on graph6 inputs, JSON
//! out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 inconclusive (node budget exhausted). Graph-producing subcommands
//! (`join`, `nabla`) print bare graph6 lines by default so they pipe into
//! the other subcommands via `-`.

use std::collections::VecDeque;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use psi_lab::clique::clique_number;
use psi_lab::constructions::structure_coloring;
use psi_lab::error::Error;
use psi_lab::graph::{join, nabla_k, Graph};
use psi_lab::graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
use psi_lab::mpd::{criticality_report, mpd_profile};
use psi_lab::solver::{psi, Outcome, SearchConfig, DEFAULT_NODE_BUDGET};
use psi_lab::verify::Harness;
use psi_lab::witness::{find_witness_not_critical, find_witness_not_weakly_critical};

const SCHEMA: &str = "psi-lab/1";
const BUDGET_ENV: &str = "PSI_LAB_BUDGET";

#[derive(Parser)]
#[command(
    name = "psi-lab",
    version,
    about = "Exact pseudoachromatic numbers of small graphs, with criticality analysis and join constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Branch-node budget per solver call (default: PSI_LAB_BUDGET or 10^8).
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Permutes search tie-breaking; values never depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    json_indent: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact pseudoachromatic number with a witness coloring.
    Psi { input: String },
    /// Exact clique number with a witness clique.
    Omega { input: String },
    /// Minimal psi-drop profile, or a single mpd value with --k.
    Mpd {
        input: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Criticality and weak criticality, decided by two independent routes.
    Critical { input: String },
    /// Join of two graphs; prints a graph6 line unless --json is given.
    Join {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// k-fold join of a graph with itself; prints a graph6 line.
    Nabla {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Structural witnesses that the graph is not (weakly) critical.
    Witness {
        input: String,
        #[arg(long, value_enum, default_value_t = WitnessKind::Both)]
        variant: WitnessKind,
    },
    /// Maximum-coloring structure classification and edge bounds.
    Structure { input: String },
    /// Replays the claim catalog over the embedded corpus or a graph6 file.
    Verify {
        /// graph6 file replacing the embedded corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Run only these check ids (repeatable); default is the full catalog.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 10)]
        max_pair_order: usize,
        #[arg(long, default_value_t = 20)]
        max_nabla_order: usize,
        /// Also sweep all pairs for additivity and criticality classes.
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Weak,
    Critical,
    Both,
}

/// Resolves inputs to graphs: `-` reads stdin, an existing path reads that
/// file, anything else parses as a graph6 literal.
struct InputReader {
    stdin_lines: Option<VecDeque<String>>,
}

impl InputReader {
    fn new() -> Self {
        InputReader { stdin_lines: None }
    }

    fn next_stdin(&mut self) -> Result<String, Error> {
        if self.stdin_lines.is_none() {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            self.stdin_lines = Some(
                buf.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with(">>"))
                    .map(String::from)
                    .collect(),
            );
        }
        self.stdin_lines
            .as_mut()
            .unwrap()
            .pop_front()
            .ok_or_else(|| Error::Domain("no graph6 line on standard input".into()))
    }

    fn graph(&mut self, input: &str) -> Result<Graph, Error> {
        if input == "-" {
            return parse_graph6(&self.next_stdin()?);
        }
        if Path::new(input).is_file() {
            let text = std::fs::read_to_string(input)?;
            let graphs = parse_graph6_lines(&text)?;
            return graphs
                .into_iter()
                .next()
                .ok_or_else(|| Error::Domain(format!("no graph6 line in {input}")));
        }
        parse_graph6(input)
    }
}

fn emit(value: &Value, indent: bool) {
    let text = if indent {
        serde_json::to_string_pretty(value).expect("report serializes")
    } else {
        serde_json::to_string(value).expect("report serializes")
    };
    println!("{text}");
}

fn graph_header(command: &str, g: &Graph) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "graph6": emit_graph6(g).ok(),
        "label": g.label(),
        "n": g.n(),
        "edge_count": g.edge_count(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(a), Some(b)) = (base.as_object_mut(), extra.as_object()) {
        for (k, v) in b {
            a.insert(k.clone(), v.clone());
        }
    }
    base
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Domain(format!("cannot size the thread pool: {e}")))?;
    }
    let budget = cli.global.budget.or_else(|| {
        std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok())
    });
    let cfg = SearchConfig {
        node_budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
        seed: cli.global.seed,
    };
    let indent = cli.global.json_indent;
    let mut reader = InputReader::new();

    match cli.command {
        Command::Psi { input } => {
            let g = reader.graph(&input)?;
            let (omega, _) = clique_number(&g);
            let base = merge(graph_header("psi", &g), json!({ "omega": omega }));
            match psi(&g, &cfg) {
                Outcome::Exact(r) => {
                    let out = merge(
                        base,
                        json!({
                            "status": "exact",
                            "psi": r.value,
                            "witness": r.witness.colors(),
                            "witness_text": r.witness.as_text(),
                            "bounds": r.bound_trace,
                        }),
                    );
                    emit(&out, indent);
                    Ok(0)
                }
                Outcome::Inconclusive(info) => {
                    let out = merge(base, json!({ "status": "inconclusive", "bounds": info }));
                    emit(&out, indent);
                    Ok(3)
                }
            }
        }
        Command::Omega { input } => {
            let g = reader.graph(&input)?;
            let (omega, witness) = clique_number(&g);
            let out = merge(
                graph_header("omega", &g),
                json!({ "omega": omega, "witness": witness }),
            );
            emit(&out, indent);
            Ok(0)
        }
        Command::Mpd { input, k } => {
            let g = reader.graph(&input)?;
            if let Some(k) = k {
                if k > g.n() {
                    return Err(Error::Domain(format!(
                        "k = {k} out of range 0..={}",
                        g.n()
                    )));
                }
            }
            match mpd_profile(&g, &cfg)? {
                Outcome::Exact(profile) => {
                    let entries: Vec<_> = match k {
                        Some(k) => vec![profile.entries[k].clone()],
                        None => profile.entries.clone(),
                    };
                    let out = merge(
                        graph_header("mpd", &g),
                        json!({ "status": "exact", "psi": profile.psi, "entries": entries }),
                    );
                    emit(&out, indent);
                    Ok(0)
                }
                Outcome::Inconclusive(info) => {
                    let out = merge(
                        graph_header("mpd", &g),
                        json!({ "status": "inconclusive", "bounds": info }),
                    );
                    emit(&out, indent);
                    Ok(3)
                }
            }
        }
        Command::Critical { input } => {
            let g = reader.graph(&input)?;
            match criticality_report(&g, &cfg)? {
                Outcome::Exact(report) => {
                    let out = merge(
                        graph_header("critical", &g),
                        json!({
                            "status": "exact",
                            "omega": report.omega,
                            "psi": report.psi,
                            "critical": report.critical(),
                            "weakly_critical": report.weakly_critical(),
                            "critical_by_formula": report.critical_by_formula,
                            "critical_by_mpd": report.critical_by_mpd,
                            "weakly_critical_by_formula": report.weakly_critical_by_formula,
                            "weakly_critical_by_mpd": report.weakly_critical_by_mpd,
                            "critical_failing_k": report.critical_failing_k,
                            "weakly_failing_k": report.weakly_failing_k,
                            "mpd": report.profile.entries,
                        }),
                    );
                    emit(&out, indent);
                    Ok(0)
                }
                Outcome::Inconclusive(info) => {
                    let out = merge(
                        graph_header("critical", &g),
                        json!({ "status": "inconclusive", "bounds": info }),
                    );
                    emit(&out, indent);
                    Ok(3)
                }
            }
        }
        Command::Join { a, b, json: as_json } => {
            let (ga, gb) = (reader.graph(&a)?, reader.graph(&b)?);
            let joined = join(&ga, &gb)?;
            let line = emit_graph6(&joined)?;
            if as_json {
                let out = merge(graph_header("join", &joined), json!({}));
                emit(&out, indent);
            } else {
                println!("{line}");
            }
            Ok(0)
        }
        Command::Nabla { input, k, json: as_json } => {
            let g = reader.graph(&input)?;
            let result = nabla_k(&g, k)?;
            let line = emit_graph6(&result)?;
            if as_json {
                let out = merge(graph_header("nabla", &result), json!({ "k": k }));
                emit(&out, indent);
            } else {
                println!("{line}");
            }
            Ok(0)
        }
        Command::Witness { input, variant } => {
            let g = reader.graph(&input)?;
            let mut body = json!({ "status": "exact" });
            let mut inconclusive = false;
            if matches!(variant, WitnessKind::Weak | WitnessKind::Both) {
                match find_witness_not_weakly_critical(&g, &cfg)? {
                    Outcome::Exact(w) => {
                        body["not_weakly_critical_witness"] = json!(w);
                    }
                    Outcome::Inconclusive(_) => inconclusive = true,
                }
            }
            if matches!(variant, WitnessKind::Critical | WitnessKind::Both) {
                match find_witness_not_critical(&g, &cfg)? {
                    Outcome::Exact(w) => {
                        body["not_critical_witness"] = json!(w);
                    }
                    Outcome::Inconclusive(_) => inconclusive = true,
                }
            }
            if inconclusive {
                body["status"] = json!("inconclusive");
            }
            let out = merge(graph_header("witness", &g), body);
            emit(&out, indent);
            Ok(if inconclusive { 3 } else { 0 })
        }
        Command::Structure { input } => {
            let g = reader.graph(&input)?;
            match structure_coloring(&g, &cfg)? {
                Outcome::Exact(report) => {
                    let out = merge(
                        graph_header("structure", &g),
                        json!({ "status": "exact", "report": report }),
                    );
                    emit(&out, indent);
                    Ok(0)
                }
                Outcome::Inconclusive(info) => {
                    let out = merge(
                        graph_header("structure", &g),
                        json!({ "status": "inconclusive", "bounds": info }),
                    );
                    emit(&out, indent);
                    Ok(3)
                }
            }
        }
        Command::Verify { corpus, checks, max_pair_order, max_nabla_order, scan } => {
            let mut harness = match corpus {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let graphs = parse_graph6_lines(&text)?;
                    if graphs.is_empty() {
                        return Err(Error::Domain(format!(
                            "no graphs in corpus file {}",
                            path.display()
                        )));
                    }
                    Harness::with_corpus(graphs, cfg)
                }
                None => Harness::embedded(cfg),
            };
            harness.max_pair_order = max_pair_order;
            harness.max_nabla_order = max_nabla_order;

            let results = if checks.is_empty() {
                harness.run_all()?
            } else {
                let mut out = Vec::new();
                for id in &checks {
                    out.push(harness.run_check(id)?);
                }
                out
            };
            let all_passed = results.iter().all(|r| r.passed);
            let any_inconclusive = results.iter().any(|r| !r.inconclusive.is_empty());
            let mut body = json!({
                "schema": SCHEMA,
                "command": "verify",
                "corpus_size": harness.corpus().len(),
                "passed": all_passed,
                "checks": results,
            });
            let mut scan_violations = false;
            if scan {
                let report = harness.scan_additive_pairs()?;
                scan_violations = !report.violations.is_empty();
                body["additive_scan"] = json!(report);
            }
            emit(&body, indent);
            if !all_passed || scan_violations {
                Ok(1)
            } else if any_inconclusive {
                Ok(3)
            } else {
                Ok(0)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
