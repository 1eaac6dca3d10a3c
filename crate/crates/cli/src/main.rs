//! `vfk`: command-line front end for virtually free group algorithms.
//!
//! Exit codes: 0 yes/success, 1 no, 2 input or validation error,
//! 3 inconclusive or budget exhausted.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "vfk",
    version,
    about = "Decision procedures for virtually free groups"
)]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Vertex cap for Cayley-graph balls.
    #[arg(long, global = true, default_value_t = vfree::cayley::DEFAULT_CAP)]
    pub cap: usize,
    /// Seed for the randomized rewriting solver (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a presentation or grammar file.
    Validate { group: PathBuf },
    /// Normal form of a word.
    Nf { group: PathBuf, word: String },
    /// Decide whether a word represents 1.
    Wp {
        group: PathBuf,
        word: String,
        /// Word-problem solver; see `vfk solvers`.
        #[arg(long)]
        solver: Option<String>,
    },
    /// List the registered word-problem solvers.
    Solvers,
    /// Size of a presentation or grammar.
    Size { group: PathBuf },
    /// Context-free grammar operations.
    #[command(subcommand)]
    Grammar(GrammarCmd),
    /// Whether a word is equal in the group to some word accepted by an NFA.
    Member {
        #[arg(long)]
        wp: PathBuf,
        #[arg(long)]
        nfa: PathBuf,
        word: String,
    },
    /// Graph-of-groups operations.
    #[command(subcommand)]
    Gog(GogCmd),
    /// Decide whether a map from Δ induces an isomorphism onto the group.
    Verify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        gog: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Slide moves.
    #[command(subcommand)]
    Slide(SlideCmd),
    /// Decide whether two graphs of groups are related by slide moves.
    Iso {
        gog1: PathBuf,
        gog2: PathBuf,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Search for a graph-of-groups decomposition within a budget.
    Synth(SynthArgs),
    /// Constants bounding a decomposition.
    Bounds { group: PathBuf },
    /// Cayley-graph balls.
    #[command(subcommand)]
    Cayley(CayleyCmd),
    /// Boundary of the prefix cut C_x.
    Cut {
        group: PathBuf,
        #[arg(long)]
        prefix: String,
        #[arg(short, long)]
        r: usize,
    },
    /// Components of the Cayley graph outside a ball.
    Components {
        group: PathBuf,
        #[arg(short, long)]
        r: usize,
        #[arg(long)]
        probe: usize,
    },
    /// Triangulate a closed sequence of vertices.
    Triangulate {
        group: PathBuf,
        /// Comma-separated words; the last must equal the first.
        #[arg(long)]
        seq: String,
        #[arg(short)]
        k: usize,
        /// Use the exhaustive search instead of the tree procedure.
        #[arg(long)]
        search: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum GrammarCmd {
    /// Chomsky normal form.
    Cnf { grammar: PathBuf },
    /// CYK membership.
    Member { grammar: PathBuf, word: String },
}

#[derive(Subcommand, Debug)]
pub enum GogCmd {
    /// Validate and describe a graph of groups.
    Check { gog: PathBuf },
    /// Reduced form of a word over Δ.
    Reduce { gog: PathBuf, word: String },
    /// Word problem for a closed path at a base vertex.
    Wp {
        gog: PathBuf,
        word: String,
        #[arg(long)]
        base: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SlideCmd {
    /// All admissible slide moves.
    List { gog: PathBuf },
    /// Apply one slide move and print the result.
    Apply {
        gog: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        g: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CayleyCmd {
    /// Ball of radius r around 1.
    Ball {
        group: PathBuf,
        #[arg(short, long)]
        r: usize,
        /// Write the ball in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long)]
    pub max_vertices: usize,
    #[arg(long)]
    pub max_order: usize,
    #[arg(long)]
    pub max_edges: usize,
    #[arg(long)]
    pub max_image_len: usize,
    /// JSON list of `{name, table}` group tables replacing the default catalog.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Directory for `gog.json` and `hom.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&out.json).expect("json"));
            } else if !out.text.is_empty() {
                emit(&out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let msg = message(&e);
            if cli.json {
                let doc = serde_json::json!({ "error": msg });
                emit(&serde_json::to_string_pretty(&doc).expect("json"));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn message(e: &anyhow::Error) -> String {
    let mut msg = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !msg.contains(&text) {
            if !msg.is_empty() {
                msg.push_str(": ");
            }
            msg.push_str(&text);
        }
    }
    msg
}
