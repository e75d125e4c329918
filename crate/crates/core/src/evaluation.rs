//! Precision/recall evaluation of a generated book index against a gold
//! (manually produced) reference index.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::book_index::{BookIndex, BookIndexExport, IndexEntry};
use crate::rooting::{extract_root, RankRule, RootingError, WeightTable};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("document id mismatch: auto index is {auto:?}, gold index is {gold:?}")]
    DocIdMismatch { auto: String, gold: String },
    #[error("cannot aggregate zero reports")]
    EmptyAggregate,
    #[error(transparent)]
    Rooting(#[from] RootingError),
}

/// A reference index. Same file schema as the machine-readable book index
/// export, so one parser loads both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldIndex {
    pub doc_id: String,
    pub entries: Vec<IndexEntry>,
}

impl From<BookIndexExport> for GoldIndex {
    fn from(export: BookIndexExport) -> Self {
        GoldIndex {
            doc_id: export.doc_id,
            entries: export
                .entries
                .into_iter()
                .map(|(term, pages)| IndexEntry { term, pages })
                .collect(),
        }
    }
}

/// What counts as one comparable item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// Items are terms.
    TermLevel,
    /// Items are (term, page) pairs.
    PageLevel,
}

impl EvalMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            EvalMode::TermLevel => "term_level",
            EvalMode::PageLevel => "page_level",
        }
    }
}

/// Counts and metrics for one document. `precision` and `recall` are `None`
/// when their denominators are zero; undefined is reported as such, never
/// coerced to 0 or 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub doc_id: String,
    pub mode: EvalMode,
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

fn ratio(numerator: u64, denominator: u64) -> Option<f64> {
    if denominator == 0 {
        None
    } else {
        Some(numerator as f64 / denominator as f64)
    }
}

/// Compares a generated index to a gold index: precision = tp / (tp + fp),
/// recall = tp / (tp + fn). Terms match by exact surface equality, so both
/// sides must have gone through identical normalization.
pub fn compare_index(
    auto: &BookIndex,
    gold: &GoldIndex,
    mode: EvalMode,
) -> Result<EvalReport, EvalError> {
    compare_entries(auto, gold, mode, |term| Ok(term.to_string()))
}

/// Root-level comparison for robustness studies: both sides' terms are
/// reduced to their extracted roots before matching, so inflectional
/// variants count as agreement.
pub fn compare_index_by_root(
    auto: &BookIndex,
    gold: &GoldIndex,
    mode: EvalMode,
    table: &WeightTable,
    rule: &RankRule,
    root_len: usize,
) -> Result<EvalReport, EvalError> {
    compare_entries(auto, gold, mode, |term| {
        Ok(extract_root(term, table, rule, root_len)?.root)
    })
}

fn compare_entries(
    auto: &BookIndex,
    gold: &GoldIndex,
    mode: EvalMode,
    key: impl Fn(&str) -> Result<String, EvalError>,
) -> Result<EvalReport, EvalError> {
    if auto.doc_id != gold.doc_id {
        return Err(EvalError::DocIdMismatch {
            auto: auto.doc_id.clone(),
            gold: gold.doc_id.clone(),
        });
    }

    let items = |entries: &[IndexEntry]| -> Result<BTreeSet<(String, Option<u32>)>, EvalError> {
        let mut set = BTreeSet::new();
        for entry in entries {
            let term = key(&entry.term)?;
            match mode {
                EvalMode::TermLevel => {
                    set.insert((term, None));
                }
                EvalMode::PageLevel => {
                    for &page in &entry.pages {
                        set.insert((term.clone(), Some(page)));
                    }
                }
            }
        }
        Ok(set)
    };
    let (tp, fp, fn_) = count_overlap(&items(&auto.entries)?, &items(&gold.entries)?);

    Ok(EvalReport {
        doc_id: auto.doc_id.clone(),
        mode,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
        precision: ratio(tp, tp + fp),
        recall: ratio(tp, tp + fn_),
    })
}

fn count_overlap<T: Ord>(auto: &BTreeSet<T>, gold: &BTreeSet<T>) -> (u64, u64, u64) {
    let tp = auto.intersection(gold).count() as u64;
    let fp = auto.len() as u64 - tp;
    let fn_ = gold.len() as u64 - tp;
    (tp, fp, fn_)
}

/// Corpus-level aggregation: macro averages (unweighted means over the
/// documents where the metric is defined) plus micro averages pooled from
/// the summed counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub document_count: usize,
    pub macro_precision: Option<f64>,
    pub macro_recall: Option<f64>,
    pub micro_precision: Option<f64>,
    pub micro_recall: Option<f64>,
    pub total_true_positives: u64,
    pub total_false_positives: u64,
    pub total_false_negatives: u64,
}

pub fn aggregate(reports: &[EvalReport]) -> Result<EvalSummary, EvalError> {
    if reports.is_empty() {
        return Err(EvalError::EmptyAggregate);
    }
    let mean = |values: Vec<f64>| {
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    };
    let tp: u64 = reports.iter().map(|r| r.true_positives).sum();
    let fp: u64 = reports.iter().map(|r| r.false_positives).sum();
    let fn_: u64 = reports.iter().map(|r| r.false_negatives).sum();
    Ok(EvalSummary {
        document_count: reports.len(),
        macro_precision: mean(reports.iter().filter_map(|r| r.precision).collect()),
        macro_recall: mean(reports.iter().filter_map(|r| r.recall).collect()),
        micro_precision: ratio(tp, tp + fp),
        micro_recall: ratio(tp, tp + fn_),
        total_true_positives: tp,
        total_false_positives: fp,
        total_false_negatives: fn_,
    })
}
