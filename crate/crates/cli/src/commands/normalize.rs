use std::path::PathBuf;

use clap::Args;

use arindex::normalize::NormalizedDocument;

use crate::commands::{emit, load_normalized, to_pretty_json, OutputFormat};
use crate::config::{resolve, FileConfig, NormFlags, ProfileFlags};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    /// Input UTF-8 text file
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Document id (default: input file name)
    #[arg(long)]
    pub doc_id: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    #[command(flatten)]
    pub norm: NormFlags,
}

/// Text form: tokens joined by single spaces, pages separated by a form
/// feed, so the output re-normalizes to the same document.
pub fn render_normalized_text(doc: &NormalizedDocument) -> String {
    let mut pages: Vec<Vec<&str>> = vec![Vec::new(); doc.page_count as usize];
    for token in &doc.tokens {
        pages[(token.page - 1) as usize].push(token.surface.as_str());
    }
    let mut out = pages
        .iter()
        .map(|p| p.join(" "))
        .collect::<Vec<_>>()
        .join("\u{000C}\n");
    out.push('\n');
    out
}

pub fn run(args: &NormalizeArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &ProfileFlags::default())?;
    let doc = load_normalized(
        &args.input,
        &settings.normalization,
        settings.words_per_page,
        args.doc_id.as_deref(),
    )?;
    let content = match args.format {
        OutputFormat::Text => render_normalized_text(&doc),
        OutputFormat::Machine => to_pretty_json(&doc),
    };
    emit(args.out.as_deref(), &content)
}
