pub mod book_index;
pub mod eval;
pub mod invindex;
pub mod normalize;
pub mod profile;
pub mod root;

use std::path::Path;

use arindex::normalize::{
    normalize_document, NormalizationConfig, NormalizedDocument, PaginationRule, RawDocument,
};

use crate::error::CliError;

/// Output format for read commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

/// Writes results to `--out` when given, otherwise to standard output.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut json = serde_json::to_string_pretty(value).expect("value serializes");
    json.push('\n');
    json
}

/// Loads and normalizes one file, honoring form feeds when present.
pub fn load_normalized(
    path: &Path,
    config: &NormalizationConfig,
    words_per_page: u32,
    doc_id: Option<&str>,
) -> Result<NormalizedDocument, CliError> {
    let mut raw = RawDocument::from_file(path)?;
    if let Some(id) = doc_id {
        raw.doc_id = id.to_string();
    }
    let rule = PaginationRule::choose(&raw.text, words_per_page);
    Ok(normalize_document(&raw, config, &rule)?)
}

/// Normalizes a batch of already-loaded documents in parallel, preserving
/// input order.
pub fn normalize_batch(
    raws: &[RawDocument],
    config: &NormalizationConfig,
    words_per_page: u32,
) -> Result<Vec<NormalizedDocument>, CliError> {
    use rayon::prelude::*;
    raws.par_iter()
        .map(|raw| {
            let rule = PaginationRule::choose(&raw.text, words_per_page);
            normalize_document(raw, config, &rule).map_err(CliError::from)
        })
        .collect()
}
