//! Command-line interface for the subfield engine.
//!
//! Exit status: 0 on success, 1 on a domain error (JSON error payload on
//! stderr), 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use itlog_core::frontend;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "itlog", version, about = "Differential subfields of iterated-logarithm and antiderivative towers")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Emit compact JSON (the default; kept for symmetry).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: essential elements, pi-base, towers, and the generator
    /// presentation of the subfield generated by the expression.
    Analyze { expr: String },
    /// The levelled-partition tower and the pi-tower of an expression or a
    /// comma-separated list of expressions.
    Towers { input: String },
    /// Essential elements of an expression.
    Essential { expr: String },
    /// Verify the J-I-E conditions for the antiderivatives of a tower file.
    JieCheck { tower_file: PathBuf },
    /// Nonintegrability certificate for the derivative S/T over the named
    /// variables.
    CertifyNonint {
        s: String,
        t: String,
        /// Comma-separated variable names (x is always available).
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Structure-theorem analysis over a declared tower.
    Generic {
        #[command(subcommand)]
        command: GenericCommand,
    },
    /// Probe-grid soundness run: the substitution oracle against the computed
    /// form system.
    Verify {
        expr: String,
        /// Override the default grid 0,1,-1,2,-2,1/2 (comma-separated
        /// constants).
        #[arg(long)]
        probe_grid: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenericCommand {
    /// Analyze an expression over the tower declared in the file.
    Analyze {
        tower_file: PathBuf,
        expr: String,
    },
}

#[derive(Args)]
struct Empty {}

fn run(cli: &Cli) -> Result<frontend::Document, itlog_core::Error> {
    match &cli.command {
        Command::Analyze { expr } => frontend::analyze_document(expr),
        Command::Towers { input } => frontend::towers_document(input),
        Command::Essential { expr } => frontend::essential_document(expr),
        Command::JieCheck { tower_file } => {
            let json = read_file(tower_file)?;
            frontend::jie_check_document(&json)
        }
        Command::CertifyNonint { s, t, vars } => {
            frontend::certify_nonint_document(s, t, vars)
        }
        Command::Generic { command } => match command {
            GenericCommand::Analyze { tower_file, expr } => {
                let json = read_file(tower_file)?;
                frontend::generic_analyze_document(&json, expr)
            }
        },
        Command::Verify { expr, probe_grid } => {
            let grid = match probe_grid {
                Some(g) => Some(frontend::parse_grid(g)?),
                None => None,
            };
            frontend::verify_document(expr, grid)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, itlog_core::Error> {
    std::fs::read_to_string(path)
        .map_err(|e| itlog_core::Error::Domain(format!("cannot read {}: {}", path.display(), e)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            println!("{}", frontend::render(&doc, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let payload = serde_json::json!({
                "error": err.to_string(),
            });
            eprintln!("{}", payload);
            ExitCode::from(1)
        }
    }
}
