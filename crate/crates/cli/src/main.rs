use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tdlab::criticality::criticality_report;
use tdlab::families::{generate, FamilySpec};
use tdlab::graph::{parse_graph, parse_graph6, to_graph6, GraphFormat};
use tdlab::search::{run_search, GraphSource, SearchFilters, SearchJob};
use tdlab::solver::{tree_depth_with_budget, verify_feasible};
use tdlab::verify::{verify_paper_with, Level, VerifyOptions};
use tdlab::{Graph, Labeling, SolverBudget};

/// Exact tree-depth, criticality and 1-uniqueness for small graphs.
///
/// Graphs are read from --input (default stdin) as graph6 or as an edge list
/// ("n m" then m lines "u v"); the format is detected unless --format is
/// given.
#[derive(Debug, Parser)]
#[command(name = "tdlab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Input graph format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel commands.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Cap on solver memo entries per tree-depth computation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Read the graph (or graph6 stream) from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tree-depth with a witness labeling.
    Td,
    /// Check a comma-separated labeling for feasibility.
    CheckLabeling { labeling: String },
    /// Full criticality report.
    Report,
    /// Print a member of a named family as graph6.
    Family { name: String, param: String },
    /// Screen graphs for critical and non-1-unique critical graphs.
    Search(SearchArgs),
    /// Run the acceptance ledger.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// graph6 file of 8-vertex graphs to include in the (n-1)-critical check.
        #[arg(long)]
        order8: Option<String>,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Largest order of the built-in enumeration; without it the graph6
    /// stream from --input is screened.
    #[arg(long)]
    n: Option<usize>,
    /// Smallest order of the built-in enumeration (default: --n).
    #[arg(long, requires = "n")]
    min_n: Option<usize>,
    /// Target tree-depth.
    #[arg(long)]
    td: u32,
    #[arg(long)]
    critical: bool,
    #[arg(long = "non-1-unique")]
    non_one_unique: bool,
    #[arg(long)]
    connected_only: bool,
    /// Record budget overruns as skips without failing the run.
    #[arg(long)]
    allow_skips: bool,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

enum Failure {
    /// The command ran but the answer is negative (infeasible, skips, failed
    /// criteria) or a solver limit was hit.
    Domain(String),
    /// Malformed input or arguments.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Td => cmd_td(g),
        Command::CheckLabeling { labeling } => cmd_check_labeling(g, labeling),
        Command::Report => cmd_report(g),
        Command::Family { name, param } => cmd_family(g, name, param),
        Command::Search(args) => cmd_search(g, args),
        Command::VerifyPaper { level, order8 } => cmd_verify(g, *level, order8.as_deref()),
    }
}

fn read_input(g: &Global) -> Result<String, Failure> {
    match &g.input {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}"))),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(usage)?;
            Ok(text)
        }
    }
}

fn read_graph(g: &Global) -> Result<Graph, Failure> {
    let text = read_input(g)?;
    let format = g.format.map(|f| match f {
        Format::G6 => GraphFormat::Graph6,
        Format::Edges => GraphFormat::EdgeList,
    });
    parse_graph(&text, format).map_err(usage)
}

fn budget(g: &Global) -> SolverBudget {
    match g.budget {
        Some(states) => SolverBudget::with_max_states(usize::try_from(states).unwrap_or(usize::MAX)),
        None => SolverBudget::default(),
    }
}

/// Writes one line to stdout. A closed pipe ends output quietly.
fn emit(line: &str) -> Outcome {
    let mut stdout = io::stdout().lock();
    match writeln!(stdout, "{line}").and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(domain(e)),
        _ => Ok(()),
    }
}

macro_rules! out {
    ($($arg:tt)*) => {
        emit(&format!($($arg)*))?
    };
}

fn print_json(value: &serde_json::Value) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(domain)?;
    out!("{text}");
    Ok(())
}

fn cmd_td(g: &Global) -> Outcome {
    let graph = read_graph(g)?;
    let w = tree_depth_with_budget(&graph, budget(g)).map_err(domain)?;
    if g.json {
        print_json(&json!({
            "td": w.value,
            "labeling": w.labeling,
            "elimination_forest": w.elimination_forest,
        }))
    } else {
        out!("{}", w.value);
        out!("{}", w.labeling);
        Ok(())
    }
}

fn cmd_check_labeling(g: &Global, text: &str) -> Outcome {
    let graph = read_graph(g)?;
    let labeling: Labeling = text.parse().map_err(usage)?;
    // a length mismatch is a usage error, not an infeasible labeling
    let verdict = verify_feasible(&graph, &labeling).map_err(usage)?;
    if g.json {
        print_json(&json!({
            "feasible": verdict.is_none(),
            "violation": verdict.map(|v| json!({"label": v.label, "u": v.u, "v": v.v})),
        }))?;
    } else {
        match verdict {
            None => out!("feasible"),
            Some(v) => out!("infeasible at {v}"),
        }
    }
    if verdict.is_some() {
        Err(Failure::Domain(String::new()))
    } else {
        Ok(())
    }
}

fn cmd_report(g: &Global) -> Outcome {
    let graph = read_graph(g)?;
    let report = criticality_report(&graph).map_err(domain)?;
    if g.json {
        return print_json(&serde_json::to_value(&report).map_err(domain)?);
    }
    let flag = |b: bool| if b { "yes" } else { "no" };
    let non_one_unique: Vec<String> = report.non_one_unique_vertices().iter().map(|v| v.to_string()).collect();
    out!("vertices: {}", report.n);
    out!("td: {}", report.td);
    out!("surplus: {}", report.surplus);
    out!("max degree: {}", report.max_degree);
    out!("minor-critical: {}", flag(report.is_minor_critical));
    out!("subgraph-critical: {}", flag(report.is_subgraph_critical));
    out!("induced-subgraph-critical: {}", flag(report.is_induced_subgraph_critical));
    out!("1-unique: {}", flag(report.is_one_unique_graph));
    out!("non-1-unique vertices: [{}]", non_one_unique.join(","));
    if let Some(min_t) = &report.min_t {
        let cells: Vec<String> = min_t.iter().map(|t| t.map_or_else(|| "-".to_string(), |t| t.to_string())).collect();
        out!("min t: [{}]", cells.join(","));
    }
    out!("order <= 2^(td-1): {}", flag(report.conjecture_checks.order_bound));
    out!("max degree <= td-1: {}", flag(report.conjecture_checks.max_degree_bound));
    Ok(())
}

fn cmd_family(g: &Global, name: &str, param: &str) -> Outcome {
    let spec = FamilySpec::parse(name, param).map_err(usage)?;
    let graph = generate(spec).map_err(usage)?;
    let g6 = to_graph6(&graph).map_err(domain)?;
    if g.json {
        print_json(&json!({
            "family": spec.to_string(),
            "graph6": g6,
            "n": graph.n(),
            "m": graph.edge_count(),
        }))
    } else {
        out!("{g6}");
        Ok(())
    }
}

fn cmd_search(g: &Global, args: &SearchArgs) -> Outcome {
    let source = match args.n {
        Some(max_n) => GraphSource::BuiltIn { min_n: args.min_n.unwrap_or(max_n), max_n },
        None => {
            let descriptor = g.input.clone().unwrap_or_else(|| "stdin".to_string());
            GraphSource::graph6(descriptor, &read_input(g)?).map_err(usage)?
        }
    };
    let filters = SearchFilters {
        critical: args.critical,
        non_one_unique: args.non_one_unique,
        connected_only: args.connected_only,
    };
    let mut job = SearchJob::new(source, args.td, filters);
    job.budget = budget(g);
    job.allow_skips = args.allow_skips;
    let result = run_search(&job).map_err(|e| match e {
        tdlab::search::SearchError::ShortcutMismatch(_) | tdlab::search::SearchError::ReportMismatch { .. } => {
            domain(e)
        }
        _ => usage(e),
    })?;

    let text = serde_json::to_string_pretty(&result).map_err(domain)?;
    match &args.output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| domain(format!("{path}: {e}")))?,
        None => out!("{text}"),
    }
    if !g.json && args.output.is_some() {
        let c = result.counters;
        out!(
            "scanned {} graphs, {} at td {}, {} hits, {} skipped",
            c.scanned,
            c.at_target_td,
            args.td,
            c.hits,
            c.skipped
        );
    }
    if result.complete {
        Ok(())
    } else {
        Err(Failure::Domain(format!("{} graphs skipped by the budget", result.skips.len())))
    }
}

fn cmd_verify(g: &Global, level: LevelArg, order8: Option<&str>) -> Outcome {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let mut opts = VerifyOptions::new(level);
    if let Some(path) = order8 {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with(">>")) {
            parse_graph6(line.trim_end()).map_err(|e| usage(format!("{path}:{}: {e}", i + 1)))?;
        }
        opts.order8_stream = Some(text);
    }
    let ledger = verify_paper_with(&opts);
    if g.json {
        print_json(&serde_json::to_value(&ledger).map_err(domain)?)?;
    } else {
        out!("{}", ledger.to_string().trim_end());
    }
    if ledger.passed() {
        Ok(())
    } else {
        Err(Failure::Domain(String::new()))
    }
}
