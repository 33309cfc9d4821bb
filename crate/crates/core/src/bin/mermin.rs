//! Command-line driver: catalog listing, Bell-operator search, table
//! verification, and stabilizer-group display.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 search budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use mermin_core::report::{list_entries, verify_catalog, ResultDocument};
use mermin_core::search::{search, SearchConfig, SearchMode};
use mermin_core::stabilizer::StabilizerGroup;
use mermin_core::{catalog_lookup, Error, GraphSpec};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable supplying the default worker count.
const WORKERS_ENV: &str = "MERMIN_WORKERS";

#[derive(Parser)]
#[command(
    name = "mermin",
    about = "Graph-state stabilizer Bell inequalities: bounds, search, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in graph-state catalog.
    List {
        /// Only entries with this qubit count.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Search a graph for the maximally violating Bell operators.
    Search {
        /// Catalog name, e.g. `rc5`.
        #[arg(long, conflicts_with = "file")]
        graph: Option<String>,
        /// Graph file (`n <count>` then `e <i> <j>` lines).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Cap on the candidate term count.
        #[arg(long)]
        max_q: Option<u32>,
        /// Worker threads (default: MERMIN_WORKERS or all cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = EmitArg::Text)]
        emit: EmitArg,
        /// Report every optimal subset, not one per symmetry class.
        #[arg(long)]
        all_optima: bool,
        /// Abort after this many evaluated candidates.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Re-derive the published optima for the whole catalog.
    Verify {
        /// Check a single entry.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print a graph's generators and full stabilizer group.
    Show {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Symmetric,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EmitArg {
    Text,
    Machine,
}

fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::List { n } => {
            for e in list_entries(n) {
                let edges = e
                    .edges
                    .iter()
                    .map(|(a, b)| format!("{a}-{b}"))
                    .collect::<Vec<_>>()
                    .join(",");
                println!("no{:<3} {:<6} n={} edges {}", e.number, e.name, e.n, edges);
            }
            Ok(0)
        }
        Command::Search {
            graph,
            file,
            mode,
            max_q,
            workers,
            emit,
            all_optima,
            node_budget,
        } => {
            let spec = match (graph, file) {
                (Some(name), None) => catalog_lookup(&name)?,
                (None, Some(path)) => GraphSpec::from_file(&path)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "exactly one of --graph or --file is required".into(),
                    ))
                }
            };
            let cfg = SearchConfig {
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Symmetric => SearchMode::Symmetric,
                },
                max_q,
                workers: workers.unwrap_or_else(default_workers),
                report_all_optima: all_optima,
                node_budget,
            };
            match search(&spec, &cfg) {
                Ok(outcome) => {
                    let doc = ResultDocument::from_outcome(&spec, outcome)?;
                    emit_doc(&doc, emit);
                    Ok(0)
                }
                Err(Error::BudgetExceeded { nodes, partial }) => {
                    let doc = ResultDocument::from_outcome(&spec, *partial)?;
                    emit_doc(&doc, emit);
                    eprintln!("search incomplete: budget exhausted after {nodes} candidates");
                    Ok(3)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { only, workers } => {
            let report = verify_catalog(only.as_deref(), workers.unwrap_or_else(default_workers))?;
            print!("{}", report.to_text());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Show { graph } => {
            let spec = catalog_lookup(&graph)?;
            let group = StabilizerGroup::from_graph(&spec)?;
            println!("{spec}");
            println!("generators:");
            for (i, g) in group.generators().iter().enumerate() {
                println!("  g{} = {}", i + 1, g.pauli);
            }
            println!("stabilizer group ({} elements):", group.elements().len());
            for e in group.elements() {
                let factors = (0..group.n())
                    .filter(|i| e.index_set >> i & 1 == 1)
                    .map(|i| format!("g{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("·");
                let label = if factors.is_empty() { "1".into() } else { factors };
                println!("  {:>4}  {:<12} {}", e.index_set, label, e.pauli);
            }
            Ok(0)
        }
    }
}

fn emit_doc(doc: &ResultDocument, emit: EmitArg) {
    match emit {
        EmitArg::Text => print!("{}", doc.to_text()),
        EmitArg::Machine => print!("{}", doc.to_machine()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
