//! `indsat`: classify graphs, build finite prefixes and run the checks.

mod docs;
mod schema;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use indsat::classifier::structure_check_12;
use indsat::constructions::oracle::{oracle_window, OracleKind, OracleVertex};
use indsat::constructions::schedule::schedule_with_plan;
use indsat::cores::{core, CoreKind};
use indsat::enumerate::graphs_of_order;
use indsat::gatekeeper::{gatekeeper_pairs, has_fixing_operation};
use indsat::named::parse_named;
use indsat::verifier::{oracle_property, oracle_property_suite, replay_witnesses};
use indsat::{
    classify, fix_plan, induced_saturated, pair_fixed_check, parse_graph6_str, sweep, to_graph6, Graph, PairStatus,
    Saturation,
};

#[derive(Parser, Debug)]
#[command(name = "indsat", version, about = "Strong induced saturation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON schema of the command's output and exit.
    #[arg(long, global = true)]
    json_schema: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one graph (--g6) or every line of a file (--input).
    Classify {
        #[arg(long)]
        g6: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Classify a graph6 file in parallel and report per-case counts.
    Sweep {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Every core of a graph with its removal trace.
    Cores {
        #[arg(long)]
        g6: Option<String>,
    },
    /// Gatekeeper pairs and fixing-operation witnesses.
    Gatekeepers {
        #[arg(long)]
        g6: Option<String>,
    },
    /// Check H-freeness and saturation of a graph, or that one pair is fixed.
    Verify {
        #[arg(long)]
        g6: Option<String>,
        #[arg(long)]
        h: Option<String>,
        /// `u,v`: run the bounded fixed-pair check on this pair instead.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build finite stages of the construction for H.
    Prefix {
        #[arg(long)]
        g6: Option<String>,
        /// First stage (default K2).
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Oracle windows, property suites and witness replays.
    Oracle {
        /// up-right, torero, rational-geometric, grid-clique:<p>, z3
        #[arg(long)]
        kind: Option<String>,
        /// JSON array of vertices.
        #[arg(long)]
        window: Option<String>,
        /// Run the property suite with this many random windows.
        #[arg(long)]
        suite: Option<usize>,
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay every stored witness scenario.
        #[arg(long)]
        replay: bool,
    },
    /// Computer check of the 12-vertex bipartite structure claim.
    Structure12,
    /// Markdown with worked certificates.
    Docs,
    /// All graphs on n vertices up to isomorphism, as graph6 lines.
    Generate {
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Sweep { .. } => "sweep",
            Command::Cores { .. } => "cores",
            Command::Gatekeepers { .. } => "gatekeepers",
            Command::Verify { .. } => "verify",
            Command::Prefix { .. } => "prefix",
            Command::Oracle { .. } => "oracle",
            Command::Structure12 => "structure12",
            Command::Docs => "docs",
            Command::Generate { .. } => "generate",
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, kind: "usage", message: message.into() }
}

impl From<indsat::Error> for Failure {
    fn from(e: indsat::Error) -> Self {
        Failure { code: EXIT_USAGE, kind: "input", message: e.to_string() }
    }
}

impl From<indsat::GraphError> for Failure {
    fn from(e: indsat::GraphError) -> Self {
        indsat::Error::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_USAGE, kind: "io", message: e.to_string() }
    }
}

/// What a command produced: JSON or plain text, and the exit code.
enum Output {
    Json(Value, u8),
    Text(String, u8),
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn graph_arg(arg: &Option<String>, flag: &str) -> Result<Graph, Failure> {
    let s = arg.as_deref().ok_or_else(|| usage(format!("missing --{flag}")))?;
    Ok(parse_named(s)?)
}

fn read_lines(path: &Option<PathBuf>) -> Result<Vec<String>, Failure> {
    let path = path.as_ref().ok_or_else(|| usage("missing --input"))?;
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        fs::read_to_string(path)?
    };
    Ok(text.lines().map(str::to_string).collect())
}

fn parse_kind(s: &str) -> Result<OracleKind, Failure> {
    Ok(match s {
        "up-right" => OracleKind::UpRight,
        "torero" => OracleKind::Torero,
        "rational-geometric" => OracleKind::RationalGeometric,
        "z3" => OracleKind::Z3Agree,
        _ => match s.strip_prefix("grid-clique:").and_then(|p| p.parse().ok()) {
            Some(p) if p >= 1 => OracleKind::GridClique { p },
            _ => return Err(usage(format!("unknown oracle kind {s:?}"))),
        },
    })
}

fn certificate_json(g: &Graph) -> Result<Value, Failure> {
    let t = Instant::now();
    let cert = classify(g)?;
    let mut v = to_value(&cert);
    v["timings"] = json!({ "classify_us": t.elapsed().as_micros() as u64 });
    Ok(v)
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Classify { g6, input, nmax } => {
            if let Some(s) = g6 {
                let g = parse_named(s)?;
                return Ok(Output::Json(certificate_json(&g)?, 0));
            }
            let mut out = Vec::new();
            for (i, line) in read_lines(input)?.iter().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let g = parse_graph6_str(line).map_err(|e| usage(format!("line {}: {e}", i + 1)))?;
                if nmax.is_some_and(|m| g.n() > m) {
                    return Err(usage(format!("line {}: more than {} vertices", i + 1, nmax.unwrap_or(0))));
                }
                out.push(certificate_json(&g)?);
            }
            Ok(Output::Json(Value::Array(out), 0))
        }
        Command::Sweep { input, nmax, workers } => {
            if *workers == 0 {
                return Err(usage("--workers must be at least 1"));
            }
            let lines = read_lines(input)?;
            let report = sweep(&lines, *nmax, *workers)?;
            let code = if !report.unclassified.is_empty() {
                EXIT_INCOMPLETE
            } else if !report.errors.is_empty() {
                EXIT_USAGE
            } else {
                0
            };
            let mut v = to_value(&report);
            v["workers"] = json!(workers);
            v["nmax"] = json!(nmax);
            Ok(Output::Json(v, code))
        }
        Command::Cores { g6 } => {
            let g = graph_arg(g6, "g6")?;
            let cores: Vec<Value> = CoreKind::ALL
                .iter()
                .map(|&kind| {
                    let r = core(&g, kind);
                    json!({ "kind": kind.name(), "core": to_graph6(&r.core), "order": r.core.n(), "trace": r.trace })
                })
                .collect();
            Ok(Output::Json(json!({ "graph": to_graph6(&g), "cores": cores }), 0))
        }
        Command::Gatekeepers { g6 } => {
            let g = graph_arg(g6, "g6")?;
            let result = has_fixing_operation(&g);
            let edges = gatekeeper_pairs(&g, PairStatus::Edge).ok();
            let nonedges = gatekeeper_pairs(&g, PairStatus::Nonedge).ok();
            Ok(Output::Json(
                json!({
                    "graph": to_graph6(&g),
                    "complete": result.is_complete(),
                    "edge_gatekeepers": edges,
                    "nonedge_gatekeepers": nonedges,
                    "result": result,
                }),
                0,
            ))
        }
        Command::Verify { g6, h, pair, k, trials, seed } => {
            let g = graph_arg(g6, "g6")?;
            let h = graph_arg(h, "h")?;
            if let Some(p) = pair {
                let nums: Vec<usize> = p
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| usage(format!("bad --pair {p:?}"))))
                    .collect::<Result<_, _>>()?;
                let [u, v] = nums[..] else { return Err(usage(format!("bad --pair {p:?}"))) };
                let check = pair_fixed_check(&g, &h, (u, v), *k, *trials, *seed)?;
                let code = if check.passed() { 0 } else { EXIT_VERIFY };
                let mut out = to_value(&check);
                out["passed"] = json!(check.passed());
                out["graph"] = json!(to_graph6(&g));
                out["pattern"] = json!(to_graph6(&h));
                return Ok(Output::Json(out, code));
            }
            let result = induced_saturated(&g, &h)?;
            let saturated = result.is_saturated();
            let free = !matches!(result, Saturation::NotFree { .. });
            Ok(Output::Json(
                json!({
                    "graph": to_graph6(&g),
                    "pattern": to_graph6(&h),
                    "free": free,
                    "saturated": saturated,
                    "pairs": g.pairs().count(),
                    "result": result,
                }),
                if saturated { 0 } else { EXIT_VERIFY },
            ))
        }
        Command::Prefix { g6, start, steps, m } => {
            let h = graph_arg(g6, "g6")?;
            let start = match start {
                Some(s) => parse_named(s)?,
                None => Graph::complete(2),
            };
            let cert = classify(&h)?;
            let plan = fix_plan(&h)?;
            let m = m.unwrap_or(h.n() + 2);
            let states = schedule_with_plan(&start, &plan, *steps, m)?;
            let stages: Vec<Value> = states
                .iter()
                .map(|s| json!({ "graph": to_graph6(&s.graph), "order": s.graph.n(), "edges": s.graph.edge_count(), "state": s }))
                .collect();
            Ok(Output::Json(
                json!({
                    "pattern": to_graph6(&h),
                    "complemented": cert.complemented,
                    "case": cert.case,
                    "plan": plan,
                    "m": m,
                    "steps": steps,
                    "stages": stages,
                }),
                0,
            ))
        }
        Command::Oracle { kind, window, suite, size, seed, replay } => {
            if *replay {
                let report = replay_witnesses()?;
                let code = if report.all_passed() { 0 } else { EXIT_VERIFY };
                let mut v = to_value(&report);
                v["all_passed"] = json!(report.all_passed());
                return Ok(Output::Json(v, code));
            }
            let kind = parse_kind(kind.as_deref().ok_or_else(|| usage("missing --kind"))?)?;
            if let Some(windows) = suite {
                let report = oracle_property_suite(kind, *windows, *size, *seed)?;
                let code = if report.violations.is_empty() { 0 } else { EXIT_VERIFY };
                return Ok(Output::Json(to_value(&report), code));
            }
            let text = window.as_deref().ok_or_else(|| usage("need --window, --suite or --replay"))?;
            let verts: Vec<OracleVertex> =
                serde_json::from_str(text).map_err(|e| usage(format!("bad --window: {e}")))?;
            let g = oracle_window(kind, &verts)?;
            Ok(Output::Json(
                json!({
                    "kind": kind,
                    "vertices": verts,
                    "graph": to_graph6(&g),
                    "edges": g.edges().collect::<Vec<_>>(),
                    "property_holds": oracle_property(kind, &g)?,
                }),
                0,
            ))
        }
        Command::Structure12 => {
            let report = structure_check_12();
            let code = if report.all_passed { 0 } else { EXIT_VERIFY };
            Ok(Output::Json(to_value(&report), code))
        }
        Command::Docs => Ok(Output::Text(docs::generate_docs_examples()?, 0)),
        Command::Generate { n } => {
            if *n > 9 {
                return Err(usage("generate supports at most 9 vertices"));
            }
            let mut s = String::new();
            for g in graphs_of_order(*n) {
                s.push_str(&to_graph6(&g));
                s.push('\n');
            }
            Ok(Output::Text(s, 0))
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fail(f: &Failure) -> ExitCode {
    let v = json!({ "error": f.kind, "message": f.message });
    eprintln!("{v}");
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(&usage(e.to_string()));
        }
    };
    if cli.json_schema {
        return match schema::schema_for(cli.command.name()) {
            Some(s) => match emit(&cli.out, s) {
                Ok(()) => ExitCode::SUCCESS,
                Err(f) => fail(&f),
            },
            None => fail(&usage(format!("{} prints text, not JSON", cli.command.name()))),
        };
    }
    let result = run(&cli.command).and_then(|output| {
        let (text, code) = match output {
            Output::Json(v, code) => (serde_json::to_string_pretty(&v).expect("json") + "\n", code),
            Output::Text(t, code) => (t, code),
        };
        emit(&cli.out, &text)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => fail(&f),
    }
}
