use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use arindex::book_index::{BookIndex, BookIndexExport, IndexEntry};
use arindex::evaluation::{
    aggregate, compare_index, compare_index_by_root, EvalMode, EvalReport, EvalSummary, GoldIndex,
};
use arindex::rooting::{RankRule, WeightTable, DEFAULT_ROOT_LEN};

use crate::commands::emit;
use crate::commands::root::parse_rank_rule;
use crate::config::FileConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Term,
    Page,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Generated index export file
    #[arg(long, value_name = "FILE", conflicts_with_all = ["auto_dir", "gold_dir"])]
    pub auto: Option<PathBuf>,
    /// Gold reference index file
    #[arg(long, value_name = "FILE", requires = "auto")]
    pub gold: Option<PathBuf>,
    /// Directory of generated index exports (batch mode)
    #[arg(long, value_name = "DIR", requires = "gold_dir")]
    pub auto_dir: Option<PathBuf>,
    /// Directory of gold reference files matched by file name
    #[arg(long, value_name = "DIR", requires = "auto_dir")]
    pub gold_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "term")]
    pub mode: ModeArg,
    /// Match terms by extracted root instead of exact surface
    #[arg(long)]
    pub match_roots: bool,
    /// Weight table for --match-roots
    #[arg(long, value_name = "FILE")]
    pub weights: Option<PathBuf>,
    /// Rank rule for --match-roots
    #[arg(long, default_value = "positional")]
    pub rank_rule: String,
    #[arg(long, default_value_t = DEFAULT_ROOT_LEN)]
    pub root_len: usize,
    /// Write a structured JSON report
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// Output file for the text table (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

enum TermMatching {
    Exact,
    Root {
        table: WeightTable,
        rule: RankRule,
        root_len: usize,
    },
}

impl TermMatching {
    fn compare(
        &self,
        auto: &BookIndex,
        gold: &GoldIndex,
        mode: EvalMode,
    ) -> Result<EvalReport, CliError> {
        let report = match self {
            TermMatching::Exact => compare_index(auto, gold, mode)?,
            TermMatching::Root {
                table,
                rule,
                root_len,
            } => compare_index_by_root(auto, gold, mode, table, rule, *root_len)?,
        };
        Ok(report)
    }
}

fn load_export(path: &Path) -> Result<BookIndexExport, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    BookIndexExport::parse(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn auto_index_from(export: BookIndexExport) -> BookIndex {
    BookIndex {
        doc_id: export.doc_id,
        entries: export
            .entries
            .into_iter()
            .map(|(term, pages)| IndexEntry { term, pages })
            .collect(),
        grouped_by_root: false,
    }
}

fn format_metric(value: Option<f64>) -> String {
    match value {
        Some(v) => v.to_string(),
        None => "n/a".to_string(),
    }
}

fn report_line(report: &EvalReport) -> String {
    format!(
        "{}\t{}\ttp={}\tfp={}\tfn={}\tprecision={}\trecall={}\n",
        report.doc_id,
        report.mode.as_str(),
        report.true_positives,
        report.false_positives,
        report.false_negatives,
        format_metric(report.precision),
        format_metric(report.recall),
    )
}

fn summary_lines(summary: &EvalSummary) -> String {
    format!(
        "documents\t{}\nmacro_precision\t{}\nmacro_recall\t{}\nmicro_precision\t{}\nmicro_recall\t{}\n",
        summary.document_count,
        format_metric(summary.macro_precision),
        format_metric(summary.macro_recall),
        format_metric(summary.micro_precision),
        format_metric(summary.micro_recall),
    )
}

#[derive(Serialize)]
struct BatchReport<'a> {
    reports: &'a [EvalReport],
    summary: &'a EvalSummary,
}

pub fn run(args: &EvalArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let mode = match args.mode {
        ModeArg::Term => EvalMode::TermLevel,
        ModeArg::Page => EvalMode::PageLevel,
    };
    let matching = if args.match_roots {
        let table = match args.weights.as_ref().or(file_config.paths.weights.as_ref()) {
            Some(path) => WeightTable::load(path)?,
            None => WeightTable::default_table(),
        };
        TermMatching::Root {
            table,
            rule: parse_rank_rule(&args.rank_rule)?,
            root_len: args.root_len,
        }
    } else {
        TermMatching::Exact
    };

    match (&args.auto, &args.gold, &args.auto_dir, &args.gold_dir) {
        (Some(auto_path), Some(gold_path), None, None) => {
            let auto = auto_index_from(load_export(auto_path)?);
            let gold: GoldIndex = load_export(gold_path)?.into();
            let report = matching.compare(&auto, &gold, mode)?;
            emit(args.out.as_deref(), &report_line(&report))?;
            if let Some(report_path) = &args.report {
                let mut json =
                    serde_json::to_string_pretty(&report).expect("report serializes");
                json.push('\n');
                emit(Some(report_path), &json)?;
            }
            Ok(())
        }
        (None, None, Some(auto_dir), Some(gold_dir)) => {
            let mut reports = Vec::new();
            let mut text = String::new();
            let mut files: Vec<PathBuf> = std::fs::read_dir(auto_dir)
                .map_err(|e| CliError::Input(format!("{}: {e}", auto_dir.display())))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.is_file() && p.extension().and_then(|x| x.to_str()) == Some("json"))
                .collect();
            files.sort();
            for auto_path in files {
                let file_name = auto_path.file_name().expect("file has a name");
                let gold_path = gold_dir.join(file_name);
                if !gold_path.is_file() {
                    eprintln!(
                        "warning: no gold file for {}, skipped",
                        auto_path.display()
                    );
                    continue;
                }
                let auto = auto_index_from(load_export(&auto_path)?);
                let gold: GoldIndex = load_export(&gold_path)?.into();
                let report = matching.compare(&auto, &gold, mode)?;
                text.push_str(&report_line(&report));
                reports.push(report);
            }
            let summary = aggregate(&reports)?;
            text.push_str(&summary_lines(&summary));
            emit(args.out.as_deref(), &text)?;
            if let Some(report_path) = &args.report {
                let batch = BatchReport {
                    reports: &reports,
                    summary: &summary,
                };
                let mut json = serde_json::to_string_pretty(&batch).expect("report serializes");
                json.push('\n');
                emit(Some(report_path), &json)?;
            }
            Ok(())
        }
        _ => Err(CliError::Config(
            "pass either --auto FILE --gold FILE or --auto-dir DIR --gold-dir DIR".into(),
        )),
    }
}
