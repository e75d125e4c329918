use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use arindex::normalize::is_arabic_letter;
use arindex::rooting::{extract_root, RankRule, RootResult, WeightTable, DEFAULT_ROOT_LEN};

use crate::commands::{emit, to_pretty_json, OutputFormat};
use crate::config::FileConfig;
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct RootArgs {
    /// Word to extract the root from (Arabic letters only)
    #[arg(long)]
    pub word: String,
    /// Weight table file (default: built-in table)
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,
    /// `positional` or `custom:R1,R2,...` (explicit per-position ranks)
    #[arg(long, default_value = "positional")]
    pub rank_rule: String,
    #[arg(long, default_value_t = DEFAULT_ROOT_LEN)]
    pub root_len: usize,
    /// Print the per-letter weight/rank/product table
    #[arg(long)]
    pub trace: bool,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

pub fn parse_rank_rule(spec: &str) -> Result<RankRule, CliError> {
    if spec == "positional" {
        return Ok(RankRule::Positional);
    }
    if let Some(list) = spec.strip_prefix("custom:") {
        let ranks: Result<Vec<f64>, _> = list.split(',').map(|s| s.trim().parse()).collect();
        let ranks = ranks.map_err(|_| {
            CliError::Config(format!("invalid rank list in {spec:?}; expected numbers"))
        })?;
        return Ok(RankRule::custom(ranks)?);
    }
    Err(CliError::Config(format!(
        "unknown rank rule {spec:?}; use positional or custom:R1,R2,..."
    )))
}

#[derive(Serialize)]
struct TraceRow {
    letter: char,
    weight: f64,
    rank: f64,
    product: f64,
}

#[derive(Serialize)]
struct RootOutput {
    word: String,
    root: String,
    short_word: bool,
    products: Vec<TraceRow>,
}

fn render_text(result: &RootResult, trace: bool) -> String {
    let mut out = String::new();
    if trace {
        out.push_str("letter\tweight\trank\tproduct\n");
        for row in &result.products {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                row.letter, row.weight, row.rank, row.product
            ));
        }
    }
    out.push_str(&result.root);
    out.push('\n');
    if result.short_word {
        out.push_str("(word shorter than the requested root length; returned unchanged)\n");
    }
    out
}

pub fn run(args: &RootArgs, file_config: &FileConfig) -> Result<(), CliError> {
    if args.word.is_empty() || !args.word.chars().all(is_arabic_letter) {
        return Err(CliError::Config(format!(
            "--word must be Arabic letters only, got {:?}",
            args.word
        )));
    }
    let table = match args
        .weights
        .as_ref()
        .or(file_config.paths.weights.as_ref())
    {
        Some(path) => WeightTable::load(path)?,
        None => WeightTable::default_table(),
    };
    let rule = parse_rank_rule(&args.rank_rule)?;
    let result = extract_root(&args.word, &table, &rule, args.root_len)?;

    let content = match args.format {
        OutputFormat::Text => render_text(&result, args.trace),
        OutputFormat::Machine => to_pretty_json(&RootOutput {
            word: result.word.clone(),
            root: result.root.clone(),
            short_word: result.short_word,
            products: result
                .products
                .iter()
                .map(|p| TraceRow {
                    letter: p.letter,
                    weight: p.weight,
                    rank: p.rank,
                    product: p.product,
                })
                .collect(),
        }),
    };
    emit(args.out.as_deref(), &content)
}
