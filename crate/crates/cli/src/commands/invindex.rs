//! The invindex subcommands: add, query, phrase, stats.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde::Serialize;

use arindex::inverted_index::{IndexVariant, InvIndexError, InvertedIndex, Posting};

use crate::commands::{emit, normalize_batch, to_pretty_json, OutputFormat};
use crate::config::{resolve, FileConfig, NormFlags, ProfileFlags};
use crate::error::CliError;

#[derive(Debug, Subcommand)]
pub enum InvindexCmd {
    /// Index one or more documents
    Add(AddArgs),
    /// Look up the posting list of a term
    Query(QueryArgs),
    /// Find documents containing a phrase (positional indexes only)
    Phrase(PhraseArgs),
    /// Print index counters
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Document,
    Positional,
}

#[derive(Debug, Args)]
pub struct AddArgs {
    /// Index file (created when missing)
    #[arg(long, value_name = "PATH")]
    pub index: PathBuf,
    /// Input files
    #[arg(long = "in", value_name = "FILE", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Variant for a newly created index (must match an existing one)
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[command(flatten)]
    pub norm: NormFlags,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long, value_name = "PATH")]
    pub index: PathBuf,
    #[arg(long)]
    pub term: String,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct PhraseArgs {
    #[arg(long, value_name = "PATH")]
    pub index: PathBuf,
    /// Whitespace-separated phrase, e.g. --terms "T1 T2"
    #[arg(long)]
    pub terms: String,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_name = "PATH")]
    pub index: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

fn open_index(path: &Path, variant: Option<VariantArg>) -> Result<InvertedIndex, CliError> {
    let wanted = variant.map(|v| match v {
        VariantArg::Document => IndexVariant::DocumentLevel,
        VariantArg::Positional => IndexVariant::Positional,
    });
    if path.exists() {
        let index = InvertedIndex::load(path)?;
        if let Some(wanted) = wanted {
            if index.variant() != wanted {
                return Err(CliError::Config(format!(
                    "index {} already exists with a different variant",
                    path.display()
                )));
            }
        }
        Ok(index)
    } else {
        Ok(InvertedIndex::new(wanted.unwrap_or(IndexVariant::Positional)))
    }
}

fn run_add(args: &AddArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &ProfileFlags::default())?;
    let mut index = open_index(&args.index, args.variant)?;

    let raws: Result<Vec<_>, CliError> = args
        .inputs
        .iter()
        .map(|p| arindex::normalize::RawDocument::from_file(p).map_err(CliError::from))
        .collect();
    let docs = normalize_batch(&raws?, &settings.normalization, settings.words_per_page)?;

    let mut added = 0usize;
    let mut duplicates = 0usize;
    for doc in &docs {
        match index.add_document(doc) {
            Ok(()) => added += 1,
            Err(
                e @ (InvIndexError::DuplicateDocId(_) | InvIndexError::DuplicateContent { .. }),
            ) => {
                eprintln!("warning: skipped duplicate: {e}");
                duplicates += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    index.save(&args.index)?;
    eprintln!(
        "indexed {added} document(s), skipped {duplicates} duplicate(s); {} total",
        index.doc_count()
    );
    if added == 0 && duplicates > 0 {
        return Err(CliError::Duplicate(
            "every input was already indexed".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct PhraseHitOutput<'a> {
    doc_id: &'a str,
    start_positions: &'a [u32],
}

fn render_postings_text(postings: &[Posting]) -> String {
    let mut out = String::new();
    for posting in postings {
        out.push_str(&posting.doc_id);
        out.push('\t');
        out.push_str(&posting.term_frequency.to_string());
        if !posting.positions.is_empty() {
            let positions: Vec<String> =
                posting.positions.iter().map(u32::to_string).collect();
            out.push('\t');
            out.push_str(&positions.join(","));
        }
        out.push('\n');
    }
    out
}

fn run_query(args: &QueryArgs) -> Result<(), CliError> {
    let index = InvertedIndex::load(&args.index)?;
    let postings = index.query_term(&args.term);
    let content = match args.format {
        OutputFormat::Text => render_postings_text(postings),
        OutputFormat::Machine => to_pretty_json(&postings),
    };
    emit(args.out.as_deref(), &content)
}

fn run_phrase(args: &PhraseArgs) -> Result<(), CliError> {
    let index = InvertedIndex::load(&args.index)?;
    let terms: Vec<String> = args.terms.split_whitespace().map(str::to_string).collect();
    let hits = index.query_phrase(&terms)?;
    let content = match args.format {
        OutputFormat::Text => {
            let mut out = String::new();
            for hit in &hits {
                let starts: Vec<String> =
                    hit.start_positions.iter().map(u32::to_string).collect();
                out.push_str(&format!("{}\t{}\n", hit.doc_id, starts.join(",")));
            }
            out
        }
        OutputFormat::Machine => to_pretty_json(
            &hits
                .iter()
                .map(|h| PhraseHitOutput {
                    doc_id: &h.doc_id,
                    start_positions: &h.start_positions,
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(args.out.as_deref(), &content)
}

#[derive(Serialize)]
struct StatsOutput {
    variant: &'static str,
    documents: u64,
    terms: usize,
    postings: usize,
}

fn run_stats(args: &StatsArgs) -> Result<(), CliError> {
    let index = InvertedIndex::load(&args.index)?;
    let stats = index.stats();
    let variant = match index.variant() {
        IndexVariant::DocumentLevel => "document_level",
        IndexVariant::Positional => "positional",
    };
    let content = match args.format {
        OutputFormat::Text => format!(
            "variant\t{variant}\ndocuments\t{}\nterms\t{}\npostings\t{}\n",
            stats.doc_count, stats.term_count, stats.posting_count
        ),
        OutputFormat::Machine => to_pretty_json(&StatsOutput {
            variant,
            documents: stats.doc_count,
            terms: stats.term_count,
            postings: stats.posting_count,
        }),
    };
    emit(args.out.as_deref(), &content)
}

pub fn run(cmd: &InvindexCmd, file_config: &FileConfig) -> Result<(), CliError> {
    match cmd {
        InvindexCmd::Add(args) => run_add(args, file_config),
        InvindexCmd::Query(args) => run_query(args),
        InvindexCmd::Phrase(args) => run_phrase(args),
        InvindexCmd::Stats(args) => run_stats(args),
    }
}
