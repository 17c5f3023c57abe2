//! `dlmeta`: defeasible reasoning, meta-program translation and the
//! conformance suite from the command line.
//!
//! Exit codes: 0 success or query affirmed, 10 query not affirmed, 2 input
//! error, 3 a conformance check failed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "dlmeta", version, about = "Defeasible logic and its logic-programming embeddings")]
struct Cli {
    /// Print a JSON envelope {command, input, result} instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the fixpoint of a theory, or answer one query.
    Conclude {
        file: PathBuf,
        /// One of +D, -D, +d, -d.
        #[arg(allow_hyphen_values = true, requires = "literal")]
        tag: Option<String>,
        literal: Option<String>,
    },
    /// Print a derivation of a tagged literal with the condition used per line.
    Explain {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        tag: String,
        literal: String,
    },
    /// Translate a theory into its ground meta-program.
    Translate {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit the default theory instead.
        #[arg(long)]
        defaults: bool,
    },
    /// Parse a .dfl theory or .lp program and print it back in canonical form.
    Parse { file: PathBuf },
    /// Stable models of a ground program.
    Stable {
        file: PathBuf,
        #[arg(long, conflicts_with = "max")]
        all: bool,
        #[arg(long)]
        max: Option<usize>,
        /// Use the exhaustive enumerator instead of the search.
        #[arg(long)]
        brute_force: bool,
    },
    /// Kunen (three-valued) semantics of a ground program.
    Kunen {
        file: PathBuf,
        /// An atom, or `not <atom>`.
        #[arg(long)]
        query: Option<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Default theory of a program (.lp) or theory (.dfl), and its extensions.
    Defaults {
        file: PathBuf,
        #[arg(long)]
        extensions: bool,
    },
    /// Dependency graph, decisiveness and unknowable literals.
    Graph {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Run the randomized conformance suite.
    Verify {
        #[arg(long, default_value_t = 300)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        #[arg(long, default_value_t = 8)]
        rules: usize,
        #[arg(long, default_value_t = 2)]
        max_body: usize,
        /// Generate decisive theories only.
        #[arg(long)]
        decisive: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(commands::run(cli.command, cli.json))
}
