//! Command line frontend: generate graphs, solve, brute-force check,
//! and verify witness documents.
//!
//! Exit codes are part of the interface:
//! 0 success (or a verified document), 2 solvability failures (density
//! hypothesis not met, no partition found, document failed verification),
//! 3 invalid input of any kind, 4 a broken internal invariant.

pub mod document;
pub mod format;
pub mod generate;

use adpart::{
    brute_force_partition, solve, validate, Error, MergedInto, PartitionWitness, Rational,
    PARTITION_CAP,
};
use clap::{Parser, Subcommand};
use document::{document_claims, parse_document, render_document, witness_document};
use format::{parse_graph, FormatError};
use generate::{generate, GraphSpec};
use std::path::{Path, PathBuf};
use thiserror::Error as ThisError;

#[derive(Parser)]
#[command(name = "adpart", version, about = "Two-part graph partitions with average-degree guarantees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a spec like complete(7), gnp(12, 1/2, 9),
    /// sharp(1, 1, 6), or union(a, b), and print it as text
    Gen {
        /// Generator spec string
        spec: String,
        /// Seed for gnp specs that do not pin one inline
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve a graph and emit the witness document
    Solve {
        /// Graph file in the text format
        #[arg(long)]
        graph: PathBuf,
        /// First side weight, a positive rational like 3/2 or 2
        #[arg(long)]
        s: String,
        /// Second side weight
        #[arg(long)]
        t: String,
        /// Write the document here instead of stdout
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exhaustively search every bipartition of a small graph
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        /// Refuse graphs larger than this many vertices
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Re-check a witness document against its graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// Witness document produced by solve
        #[arg(long)]
        json: PathBuf,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Core(e) => Some(e),
            CliError::Format(FormatError::Graph(e)) => Some(e),
            _ => None,
        };
        match core {
            Some(Error::HypothesisNotMet(_)) => 2,
            Some(Error::InternalAssertion(_)) => 4,
            _ => 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_weight(text: &str) -> Result<Rational, CliError> {
    Ok(text.parse::<Rational>()?)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Gen { spec, seed } => {
            let spec: GraphSpec = spec.parse()?;
            let g = generate(&spec, seed)?;
            print!("{}", format::render_graph(&g));
            Ok(0)
        }
        Cmd::Solve { graph, s, t, json } => {
            let g = parse_graph(&read_file(&graph)?)?;
            let s = parse_weight(&s)?;
            let t = parse_weight(&t)?;
            let w = solve(&g, &s, &t)?;
            let text = render_document(&witness_document(&w, &s, &t));
            match json {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Oracle { graph, s, t, cap } => {
            let g = parse_graph(&read_file(&graph)?)?;
            let s = parse_weight(&s)?;
            let t = parse_weight(&t)?;
            let cap = cap.unwrap_or(PARTITION_CAP);
            if g.vertex_count() > cap {
                return Err(Error::TooLarge {
                    n: g.vertex_count(),
                    cap,
                }
                .into());
            }
            match brute_force_partition(&g, &s, &t)? {
                Some((a, b)) => {
                    let doc = serde_json::json!({
                        "A": a.as_slice(),
                        "B": b.as_slice(),
                    });
                    println!("{doc}");
                    Ok(0)
                }
                None => {
                    println!("no valid partition exists");
                    Ok(2)
                }
            }
        }
        Cmd::Verify { graph, json } => {
            let g = parse_graph(&read_file(&graph)?)?;
            let doc = parse_document(&read_file(&json)?)?;
            let claims = document_claims(&doc)?;
            let witness = PartitionWitness {
                a: claims.a,
                b: claims.b,
                path: claims.path,
                s_side_margin: claims.s_side_margin,
                t_side_margin: claims.t_side_margin,
                peeled: Vec::new(),
                merged_into: MergedInto::None,
                certificate: None,
            };
            let report = validate(&g, &claims.s, &claims.t, &witness);
            if report.ok {
                println!("ok");
                Ok(0)
            } else {
                for failure in &report.failures {
                    eprintln!("invalid: {failure}");
                }
                Ok(2)
            }
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
