//! Back-of-book index generation: term frequencies, frequency-band
//! filtering, term-to-page mapping, optional root grouping, and rendering
//! the index appended to the source document.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{NormalizedDocument, RawDocument};
use crate::rooting::{extract_root, RankRule, RootingError, WeightTable};

/// Marker inserted between the original text and the appended index:
/// a separator line followed by the index header line.
pub const APPENDED_INDEX_MARKER: &str = "\n----\nفهرس\n";

#[derive(Debug, Error)]
pub enum BookIndexError {
    #[error("frequency band removed every term; relax --high-cut or --min-freq")]
    EmptyIndex,
    #[error("invalid band: {0}")]
    InvalidBand(String),
    #[error("document id mismatch: index is for {index:?} but document is {document:?}")]
    DocIdMismatch { index: String, document: String },
    #[error("invalid index export: {0}")]
    ParseExport(#[from] serde_json::Error),
    #[error(transparent)]
    Rooting(#[from] RootingError),
}

/// Frequency and page set of one distinct term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermStats {
    pub term: String,
    pub frequency: u64,
    pub pages: BTreeSet<u32>,
}

/// The frequency band kept by [`apply_band`]: drop the `high_cut` fraction
/// of top-ranked terms, then drop every term with frequency at or below
/// `low_min_freq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankingBand {
    pub high_cut: f64,
    pub low_min_freq: u64,
}

impl Default for RankingBand {
    fn default() -> Self {
        // Top 5% behave like residual stop words; hapaxes rarely belong in
        // a book index.
        RankingBand {
            high_cut: 0.05,
            low_min_freq: 1,
        }
    }
}

/// One line of a book index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub term: String,
    /// Ascending, deduplicated.
    pub pages: Vec<u32>,
}

/// An alphabetized term-to-pages index for a single document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookIndex {
    pub doc_id: String,
    /// Sorted by term codepoint order; no duplicate terms.
    pub entries: Vec<IndexEntry>,
    pub grouped_by_root: bool,
}

/// Counts every distinct surface form with its page set, sorted by
/// frequency descending (term codepoint order on ties).
pub fn term_frequencies(doc: &NormalizedDocument) -> Vec<TermStats> {
    let mut map: HashMap<&str, (u64, BTreeSet<u32>)> = HashMap::new();
    for token in &doc.tokens {
        let slot = map.entry(token.surface.as_str()).or_default();
        slot.0 += 1;
        slot.1.insert(token.page);
    }
    let mut stats: Vec<TermStats> = map
        .into_iter()
        .map(|(term, (frequency, pages))| TermStats {
            term: term.to_string(),
            frequency,
            pages,
        })
        .collect();
    stats.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.term.cmp(&b.term)));
    stats
}

/// Removes the top `ceil(high_cut * len)` terms and every term with
/// frequency at or below `low_min_freq`, preserving order. Erroring when
/// nothing survives signals a band too aggressive for the document.
pub fn apply_band(
    stats: Vec<TermStats>,
    band: &RankingBand,
) -> Result<Vec<TermStats>, BookIndexError> {
    if !(0.0..1.0).contains(&band.high_cut) {
        return Err(BookIndexError::InvalidBand(format!(
            "high_cut must be in [0, 1), got {}",
            band.high_cut
        )));
    }
    let cut = (band.high_cut * stats.len() as f64).ceil() as usize;
    let kept: Vec<TermStats> = stats
        .into_iter()
        .skip(cut)
        .filter(|s| s.frequency > band.low_min_freq)
        .collect();
    if kept.is_empty() {
        return Err(BookIndexError::EmptyIndex);
    }
    Ok(kept)
}

/// Root grouping parameters for [`build_book_index`].
#[derive(Debug, Clone)]
pub struct RootGrouping<'a> {
    pub table: &'a WeightTable,
    pub rule: &'a RankRule,
    pub root_len: usize,
}

/// Builds the index: band the term statistics, optionally merge terms that
/// share a root (headword = the group's most frequent surface form, page
/// sets unioned), and sort entries by term.
pub fn build_book_index(
    doc: &NormalizedDocument,
    band: &RankingBand,
    grouping: Option<&RootGrouping<'_>>,
) -> Result<BookIndex, BookIndexError> {
    let stats = apply_band(term_frequencies(doc), band)?;

    let entries = match grouping {
        None => stats
            .into_iter()
            .map(|s| IndexEntry {
                term: s.term,
                pages: s.pages.into_iter().collect(),
            })
            .collect(),
        Some(grouping) => {
            let mut groups: HashMap<String, Vec<TermStats>> = HashMap::new();
            for stat in stats {
                let root =
                    extract_root(&stat.term, grouping.table, grouping.rule, grouping.root_len)?
                        .root;
                groups.entry(root).or_default().push(stat);
            }
            groups
                .into_values()
                .map(|mut members| {
                    members.sort_by(|a, b| {
                        b.frequency.cmp(&a.frequency).then_with(|| a.term.cmp(&b.term))
                    });
                    let pages: BTreeSet<u32> =
                        members.iter().flat_map(|m| m.pages.iter().copied()).collect();
                    IndexEntry {
                        term: members[0].term.clone(),
                        pages: pages.into_iter().collect(),
                    }
                })
                .collect()
        }
    };

    let mut entries: Vec<IndexEntry> = entries;
    entries.sort_by(|a, b| a.term.cmp(&b.term));

    Ok(BookIndex {
        doc_id: doc.doc_id.clone(),
        entries,
        grouped_by_root: grouping.is_some(),
    })
}

/// Appends the rendered index to the original document text. The original
/// bytes are preserved exactly up to the marker, so
/// [`strip_appended_index`] recovers them.
pub fn render_index(raw: &RawDocument, index: &BookIndex) -> Result<String, BookIndexError> {
    if raw.doc_id != index.doc_id {
        return Err(BookIndexError::DocIdMismatch {
            index: index.doc_id.clone(),
            document: raw.doc_id.clone(),
        });
    }
    let mut out = String::with_capacity(raw.text.len() + 32 * index.entries.len());
    out.push_str(&raw.text);
    out.push_str(APPENDED_INDEX_MARKER);
    for entry in &index.entries {
        let pages: Vec<String> = entry.pages.iter().map(u32::to_string).collect();
        out.push_str(&entry.term);
        out.push_str(": ");
        out.push_str(&pages.join(", "));
        out.push('\n');
    }
    Ok(out)
}

/// Returns the prefix of a rendered document before the appended index, or
/// the input unchanged when no marker is present.
pub fn strip_appended_index(rendered: &str) -> &str {
    match rendered.rfind(APPENDED_INDEX_MARKER) {
        Some(pos) => &rendered[..pos],
        None => rendered,
    }
}

/// Machine-readable index file: `{doc_id, band, entries}` with entries as
/// `[term, [pages]]` pairs. Gold reference indexes use the same schema
/// (band optional).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BookIndexExport {
    pub doc_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<RankingBand>,
    pub entries: Vec<(String, Vec<u32>)>,
}

impl BookIndexExport {
    pub fn from_index(index: &BookIndex, band: Option<RankingBand>) -> Self {
        BookIndexExport {
            doc_id: index.doc_id.clone(),
            band,
            entries: index
                .entries
                .iter()
                .map(|e| (e.term.clone(), e.pages.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("index export serializes")
    }

    pub fn parse(text: &str) -> Result<Self, BookIndexError> {
        Ok(serde_json::from_str(text)?)
    }
}
