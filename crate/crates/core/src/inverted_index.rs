//! Corpus-level inverted index in two variants: document-level (term to
//! document list) and positional (term to document plus token positions,
//! enabling phrase queries). Duplicate documents are detected by id and by
//! a content fingerprint of the normalized token stream.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::normalize::NormalizedDocument;

/// Bumped on any change to the on-disk layout.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum InvIndexError {
    #[error("document {0:?} is already indexed")]
    DuplicateDocId(String),
    #[error("document {doc_id:?} has the same content as already-indexed {existing:?}")]
    DuplicateContent { doc_id: String, existing: String },
    #[error("phrase queries require a positional index; this index is document-level")]
    UnsupportedVariant,
    #[error("phrase queries need at least two terms")]
    PhraseTooShort,
    #[error("index file has format_version {found}, expected {FORMAT_VERSION}")]
    VersionMismatch { found: u32 },
    #[error("corrupt index file at line {line}, column {column}: {detail}")]
    Corrupt {
        line: usize,
        column: usize,
        detail: String,
    },
    #[error("invalid index contents: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexVariant {
    DocumentLevel,
    Positional,
}

/// One document's entry in a term's posting list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc_id: String,
    pub term_frequency: u32,
    /// Token ordinals of each occurrence, strictly ascending. Empty in the
    /// document-level variant.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub positions: Vec<u32>,
}

/// A phrase-query hit: the document and the ordinal of each match start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseHit {
    pub doc_id: String,
    pub start_positions: Vec<u32>,
}

/// Summary counters for an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexStats {
    pub doc_count: u64,
    pub term_count: usize,
    pub posting_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertedIndex {
    format_version: u32,
    variant: IndexVariant,
    doc_count: u64,
    /// doc_id to content fingerprint (hex SHA-256 of the token stream).
    registry: BTreeMap<String, String>,
    /// Terms in codepoint order; posting lists sorted by doc_id.
    postings: BTreeMap<String, Vec<Posting>>,
}

fn fingerprint(doc: &NormalizedDocument) -> String {
    let mut hasher = Sha256::new();
    for token in &doc.tokens {
        hasher.update(token.surface.as_bytes());
        hasher.update([0x1f]);
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl InvertedIndex {
    pub fn new(variant: IndexVariant) -> Self {
        InvertedIndex {
            format_version: FORMAT_VERSION,
            variant,
            doc_count: 0,
            registry: BTreeMap::new(),
            postings: BTreeMap::new(),
        }
    }

    pub fn variant(&self) -> IndexVariant {
        self.variant
    }

    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    pub fn registry(&self) -> &BTreeMap<String, String> {
        &self.registry
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            doc_count: self.doc_count,
            term_count: self.postings.len(),
            posting_count: self.postings.values().map(Vec::len).sum(),
        }
    }

    /// Indexes one normalized document. A document whose id or content is
    /// already registered is rejected and the index is left untouched.
    pub fn add_document(&mut self, doc: &NormalizedDocument) -> Result<(), InvIndexError> {
        if self.registry.contains_key(&doc.doc_id) {
            return Err(InvIndexError::DuplicateDocId(doc.doc_id.clone()));
        }
        let fp = fingerprint(doc);
        if let Some((existing, _)) = self.registry.iter().find(|(_, v)| **v == fp) {
            return Err(InvIndexError::DuplicateContent {
                doc_id: doc.doc_id.clone(),
                existing: existing.clone(),
            });
        }

        let mut occurrences: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
        for token in &doc.tokens {
            occurrences
                .entry(token.surface.as_str())
                .or_default()
                .push(token.ordinal);
        }
        for (term, positions) in occurrences {
            let posting = Posting {
                doc_id: doc.doc_id.clone(),
                term_frequency: positions.len() as u32,
                positions: match self.variant {
                    IndexVariant::Positional => positions,
                    IndexVariant::DocumentLevel => Vec::new(),
                },
            };
            let list = self.postings.entry(term.to_string()).or_default();
            let at = list
                .binary_search_by(|p| p.doc_id.as_str().cmp(&doc.doc_id))
                .unwrap_err();
            list.insert(at, posting);
        }
        self.registry.insert(doc.doc_id.clone(), fp);
        self.doc_count += 1;
        Ok(())
    }

    /// Exact-match posting list for a term; unknown terms yield an empty
    /// slice, never an error.
    pub fn query_term(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map_or(&[], Vec::as_slice)
    }

    /// Documents where the terms occur at consecutive token ordinals, with
    /// each match's start ordinal. Positional indexes only.
    pub fn query_phrase(&self, terms: &[String]) -> Result<Vec<PhraseHit>, InvIndexError> {
        if self.variant != IndexVariant::Positional {
            return Err(InvIndexError::UnsupportedVariant);
        }
        if terms.len() < 2 {
            return Err(InvIndexError::PhraseTooShort);
        }
        let lists: Vec<&[Posting]> = terms.iter().map(|t| self.query_term(t)).collect();
        if lists.iter().any(|l| l.is_empty()) {
            return Ok(Vec::new());
        }

        let mut hits = Vec::new();
        // Posting lists are doc_id-sorted, so iterating the first list
        // yields hits in doc_id order.
        for first in lists[0] {
            let rest: Option<Vec<&Posting>> = lists[1..]
                .iter()
                .map(|list| {
                    list.binary_search_by(|p| p.doc_id.cmp(&first.doc_id))
                        .ok()
                        .map(|i| &list[i])
                })
                .collect();
            let Some(rest) = rest else { continue };
            let starts: Vec<u32> = first
                .positions
                .iter()
                .copied()
                .filter(|&start| {
                    rest.iter().enumerate().all(|(offset, posting)| {
                        posting
                            .positions
                            .binary_search(&(start + offset as u32 + 1))
                            .is_ok()
                    })
                })
                .collect();
            if !starts.is_empty() {
                hits.push(PhraseHit {
                    doc_id: first.doc_id.clone(),
                    start_positions: starts,
                });
            }
        }
        Ok(hits)
    }

    /// Canonical JSON form; deterministic for a given index.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("index serializes")
    }

    /// Parses and validates an index file's contents.
    pub fn from_json(text: &str) -> Result<Self, InvIndexError> {
        let index: InvertedIndex =
            serde_json::from_str(text).map_err(|e| InvIndexError::Corrupt {
                line: e.line(),
                column: e.column(),
                detail: e.to_string(),
            })?;
        if index.format_version != FORMAT_VERSION {
            return Err(InvIndexError::VersionMismatch {
                found: index.format_version,
            });
        }
        index.validate()?;
        Ok(index)
    }

    fn validate(&self) -> Result<(), InvIndexError> {
        if self.doc_count != self.registry.len() as u64 {
            return Err(InvIndexError::Invalid(format!(
                "doc_count {} does not match registry size {}",
                self.doc_count,
                self.registry.len()
            )));
        }
        for (term, list) in &self.postings {
            for pair in list.windows(2) {
                if pair[0].doc_id >= pair[1].doc_id {
                    return Err(InvIndexError::Invalid(format!(
                        "posting list for {term:?} is not sorted by doc_id"
                    )));
                }
            }
            for posting in list {
                if !self.registry.contains_key(&posting.doc_id) {
                    return Err(InvIndexError::Invalid(format!(
                        "posting for {term:?} references unregistered document {:?}",
                        posting.doc_id
                    )));
                }
                match self.variant {
                    IndexVariant::Positional => {
                        if posting.positions.len() != posting.term_frequency as usize {
                            return Err(InvIndexError::Invalid(format!(
                                "posting for {term:?} in {:?} has {} positions but tf {}",
                                posting.doc_id,
                                posting.positions.len(),
                                posting.term_frequency
                            )));
                        }
                        if posting.positions.windows(2).any(|w| w[0] >= w[1]) {
                            return Err(InvIndexError::Invalid(format!(
                                "positions for {term:?} in {:?} are not strictly ascending",
                                posting.doc_id
                            )));
                        }
                    }
                    IndexVariant::DocumentLevel => {
                        if !posting.positions.is_empty() {
                            return Err(InvIndexError::Invalid(format!(
                                "document-level posting for {term:?} stores positions"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Writes the index atomically (temp file + rename), so a crashed write
    /// never exposes a partial index.
    pub fn save(&self, path: &Path) -> Result<(), InvIndexError> {
        let io_err = |source| InvIndexError::Io {
            path: path.display().to_string(),
            source,
        };
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_json()).map_err(io_err)?;
        std::fs::rename(&tmp, path).map_err(io_err)
    }

    pub fn load(path: &Path) -> Result<Self, InvIndexError> {
        let text = std::fs::read_to_string(path).map_err(|source| InvIndexError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}
