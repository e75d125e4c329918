//! arindex: batch CLI for Arabic document indexing, n-gram classification,
//! root extraction, inverted indexing, and index evaluation.
//!
//! Exit codes: 0 success, 2 configuration/usage error, 3 input or decode
//! error, 4 empty result, 5 duplicate document, 6 store conflict.

mod commands;
mod config;
mod error;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{book_index, eval, invindex, normalize, profile, root};
use crate::config::FileConfig;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "arindex",
    version,
    about = "Arabic document indexing, classification, and evaluation"
)]
struct Cli {
    /// TOML configuration file; flags override config values
    #[arg(short, long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for batch stages (default: available processors)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean, tokenize, and paginate a document
    Normalize(normalize::NormalizeArgs),
    /// Build the N-gram profile of a document
    Profile(profile::ProfileArgs),
    /// Train class profiles into a profile store
    Train(profile::TrainArgs),
    /// Classify a document against trained class profiles
    Classify(profile::ClassifyArgs),
    /// Extract the root of a single word
    Root(root::RootArgs),
    /// Generate a back-of-book index for a document
    BookIndex(book_index::BookIndexArgs),
    /// Maintain and query a corpus-level inverted index
    #[command(subcommand)]
    Invindex(invindex::InvindexCmd),
    /// Score a generated index against a gold reference
    Eval(eval::EvalArgs),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        // Ignore the error if a pool already exists (e.g. in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let file_config = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Normalize(args) => normalize::run(args, &file_config),
        Command::Profile(args) => profile::run_profile(args, &file_config),
        Command::Train(args) => profile::run_train(args, &file_config),
        Command::Classify(args) => profile::run_classify(args, &file_config),
        Command::Root(args) => root::run(args, &file_config),
        Command::BookIndex(args) => book_index::run(args, &file_config),
        Command::Invindex(cmd) => invindex::run(cmd, &file_config),
        Command::Eval(args) => eval::run(args, &file_config),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
