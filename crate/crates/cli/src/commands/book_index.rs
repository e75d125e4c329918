use std::path::PathBuf;

use clap::Args;

use arindex::book_index::{
    build_book_index, render_index, BookIndex, BookIndexError, BookIndexExport, RankingBand,
    RootGrouping,
};
use arindex::normalize::{normalize_document, PaginationRule, RawDocument};
use arindex::rooting::{WeightTable, DEFAULT_ROOT_LEN};

use crate::commands::emit;
use crate::commands::root::parse_rank_rule;
use crate::config::{resolve, FileConfig, NormFlags, ProfileFlags};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct BookIndexArgs {
    /// Input UTF-8 text file
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Rendered document with the appended index (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write the machine-readable index export
    #[arg(long, value_name = "FILE")]
    pub export: Option<PathBuf>,
    /// Fraction of top-frequency terms to drop
    #[arg(long)]
    pub high_cut: Option<f64>,
    /// Drop terms with frequency at or below this value
    #[arg(long)]
    pub min_freq: Option<u64>,
    /// Merge terms that share a root
    #[arg(long)]
    pub group_roots: bool,
    /// Weight table file for root grouping
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,
    /// Rank rule for root grouping
    #[arg(long, default_value = "positional")]
    pub rank_rule: String,
    #[arg(long, default_value_t = DEFAULT_ROOT_LEN)]
    pub root_len: usize,
    /// Emit a document with an empty index instead of failing when the
    /// band removes every term
    #[arg(long)]
    pub allow_empty: bool,
    #[command(flatten)]
    pub norm: NormFlags,
}

pub fn run(args: &BookIndexArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &ProfileFlags::default())?;
    let band = RankingBand {
        high_cut: args.high_cut.unwrap_or(settings.band.high_cut),
        low_min_freq: args.min_freq.unwrap_or(settings.band.low_min_freq),
    };

    let raw = RawDocument::from_file(&args.input)?;
    let rule = PaginationRule::choose(&raw.text, settings.words_per_page);
    let doc = normalize_document(&raw, &settings.normalization, &rule)?;

    let table;
    let rank_rule;
    let grouping = if args.group_roots {
        table = match args.weights.as_ref().or(settings.weights.as_ref()) {
            Some(path) => WeightTable::load(path)?,
            None => WeightTable::default_table(),
        };
        rank_rule = parse_rank_rule(&args.rank_rule)?;
        Some(RootGrouping {
            table: &table,
            rule: &rank_rule,
            root_len: args.root_len,
        })
    } else {
        None
    };

    let index = match build_book_index(&doc, &band, grouping.as_ref()) {
        Ok(index) => index,
        Err(BookIndexError::EmptyIndex) if args.allow_empty => BookIndex {
            doc_id: doc.doc_id.clone(),
            entries: Vec::new(),
            grouped_by_root: grouping.is_some(),
        },
        Err(e) => return Err(e.into()),
    };

    let rendered = render_index(&raw, &index)?;
    emit(args.out.as_deref(), &rendered)?;

    if let Some(export_path) = &args.export {
        let export = BookIndexExport::from_index(&index, Some(band));
        let mut json = export.to_json();
        json.push('\n');
        emit(Some(export_path), &json)?;
    }
    Ok(())
}
