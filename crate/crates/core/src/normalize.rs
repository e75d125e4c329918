//! Arabic text normalization: noise stripping, tokenization, letter folding,
//! stop-word removal, and page attribution.
//!
//! The pipeline turns a raw UTF-8 document into a [`NormalizedDocument`]:
//! an ordered stream of Arabic-letter tokens, each carrying the page it
//! appears on and its ordinal position in the final stream. Every step is a
//! pure function of its inputs, so documents can be normalized in parallel.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Symbols always removed by the default configuration.
pub const DEFAULT_STRIP_CHARS: &[char] = &[
    '.', ':', ';', '/', '\\', '-', '+', '?', '<', '>', '@', '$', '%', '&', '*', '(', ')', '!',
    '~', ',', '"', '\'', '،', '؛', '؟', '«', '»',
];

/// Default stop-word list shipped with the crate, one term per line.
pub const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_ar.txt");

/// Synthetic pagination default when a document has no form-feed breaks.
pub const DEFAULT_WORDS_PER_PAGE: u32 = 300;

#[derive(Debug, Error)]
pub enum NormalizeError {
    #[error("{path}: invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { path: String, offset: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("words-per-page must be positive")]
    ZeroWordsPerPage,
}

/// Letters of the base Arabic block: hamza forms through yeh.
///
/// Digits, combining marks, and Arabic-script letters of other languages
/// (e.g. Persian پ) are excluded; they are treated as noise.
pub fn is_arabic_letter(c: char) -> bool {
    matches!(c, '\u{0621}'..='\u{063A}' | '\u{0641}'..='\u{064A}')
}

fn default_diacritics() -> BTreeSet<char> {
    // Tashkeel and related combining marks, tatweel, superscript alef.
    ('\u{064B}'..='\u{065F}')
        .chain(['\u{0670}', '\u{0640}'])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationConfig {
    /// Codepoints replaced by a word separator.
    pub strip_chars: BTreeSet<char>,
    /// Codepoints deleted in place (they never split a word).
    pub diacritics: BTreeSet<char>,
    /// Tokens dropped from the normalized stream.
    pub stopwords: BTreeSet<String>,
    /// Fold أ / إ / آ to bare ا.
    pub fold_alef: bool,
    /// Fold ة to ه.
    pub fold_teh_marbuta: bool,
    /// Fold ى to ي.
    pub fold_alef_maqsura: bool,
    /// Strip a leading ال from tokens of three letters or more.
    pub strip_definite_article: bool,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        let mut config = Self::bare();
        config.stopwords = parse_stopwords(DEFAULT_STOPWORDS);
        config
    }
}

impl NormalizationConfig {
    /// Default character sets with an empty stop-word list. Useful in tests
    /// and when the caller supplies its own list.
    pub fn bare() -> Self {
        NormalizationConfig {
            strip_chars: DEFAULT_STRIP_CHARS.iter().copied().collect(),
            diacritics: default_diacritics(),
            stopwords: BTreeSet::new(),
            fold_alef: false,
            fold_teh_marbuta: false,
            fold_alef_maqsura: false,
            strip_definite_article: false,
        }
    }
}

/// Parses a stop-word list: one term per line, blank lines and `#` comments
/// ignored.
pub fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Loads a stop-word list file (UTF-8, one term per line).
pub fn load_stopwords(path: &Path) -> Result<BTreeSet<String>, NormalizeError> {
    let text = read_utf8(path)?;
    Ok(parse_stopwords(&text))
}

fn read_utf8(path: &Path) -> Result<String, NormalizeError> {
    let bytes = std::fs::read(path).map_err(|source| NormalizeError::Io {
        path: path.display().to_string(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| NormalizeError::InvalidUtf8 {
        path: path.display().to_string(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// A document as loaded from disk, before any normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    /// Unique within a corpus run.
    pub doc_id: String,
    pub text: String,
    pub source_path: Option<PathBuf>,
    /// Class label, when the document came from a labeled corpus.
    pub category: Option<String>,
}

impl RawDocument {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        RawDocument {
            doc_id: doc_id.into(),
            text: text.into(),
            source_path: None,
            category: None,
        }
    }

    /// Reads a UTF-8 text file; the file name becomes the document id.
    /// Invalid byte sequences are rejected with the offending offset.
    pub fn from_file(path: &Path) -> Result<Self, NormalizeError> {
        let text = read_utf8(path)?;
        let doc_id = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok(RawDocument {
            doc_id,
            text,
            source_path: Some(path.to_path_buf()),
            category: None,
        })
    }
}

/// One surviving word of a normalized document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Arabic letters only.
    pub surface: String,
    /// 1-based page the token appears on.
    pub page: u32,
    /// 0-based position in the normalized token stream.
    pub ordinal: u32,
}

/// The output of the normalization pipeline and the input to every
/// downstream module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedDocument {
    pub doc_id: String,
    pub tokens: Vec<Token>,
    pub page_count: u32,
}

impl NormalizedDocument {
    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.surface.as_str())
    }
}

/// How page numbers are attributed to tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaginationRule {
    /// Honor explicit form-feed (U+000C) breaks in the source text.
    FormFeeds,
    /// Synthetic pages of a fixed number of tokens each.
    WordsPerPage(u32),
}

impl PaginationRule {
    /// Form feeds when the text contains any, otherwise synthetic pages of
    /// `words_per_page` tokens.
    pub fn choose(text: &str, words_per_page: u32) -> Self {
        if text.contains('\u{000C}') {
            PaginationRule::FormFeeds
        } else {
            PaginationRule::WordsPerPage(words_per_page)
        }
    }
}

/// Removes punctuation, diacritics, digits, and non-Arabic letters.
///
/// Diacritics are deleted in place; every other removed codepoint becomes a
/// word separator. Whitespace runs collapse to single spaces and the result
/// is trimmed, so the output is Arabic letters and single spaces only.
/// Idempotent.
pub fn strip_noise(text: &str, config: &NormalizationConfig) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        if config.diacritics.contains(&c) {
            continue;
        }
        if is_arabic_letter(c) && !config.strip_chars.contains(&c) {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        } else {
            pending_space = true;
        }
    }
    out
}

/// Splits cleaned text on whitespace. Never yields empty tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Applies the enabled letter folds to a token. Idempotent.
pub fn fold_letters(token: &str, config: &NormalizationConfig) -> String {
    token
        .chars()
        .map(|c| match c {
            'أ' | 'إ' | 'آ' if config.fold_alef => 'ا',
            'ة' if config.fold_teh_marbuta => 'ه',
            'ى' if config.fold_alef_maqsura => 'ي',
            _ => c,
        })
        .collect()
}

/// Drops every token that is a member of `stopwords`, preserving order.
pub fn remove_stopwords(tokens: Vec<String>, stopwords: &BTreeSet<String>) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

fn strip_article(token: String) -> String {
    let mut chars = token.chars();
    if chars.next() == Some('ا') && chars.next() == Some('ل') && chars.next().is_some() {
        token.chars().skip(2).collect()
    } else {
        token
    }
}

/// Cleans one span of text into final token surfaces: strip, tokenize, fold,
/// optional article strip, stop-word removal.
fn clean_tokens(
    text: &str,
    config: &NormalizationConfig,
    stopwords: &BTreeSet<String>,
) -> Vec<String> {
    let cleaned = strip_noise(text, config);
    let mut tokens: Vec<String> = tokenize(&cleaned)
        .into_iter()
        .map(|t| fold_letters(&t, config))
        .collect();
    if config.strip_definite_article {
        tokens = tokens.into_iter().map(strip_article).collect();
    }
    remove_stopwords(tokens, stopwords)
}

/// Runs the full normalization pipeline and attributes a page to every
/// token.
///
/// With [`PaginationRule::FormFeeds`], the page count is the number of form
/// feeds plus one, even when trailing pages are empty. With a synthetic
/// rule, token `i` lands on page `i / w + 1`.
///
/// Stop words are matched against their folded forms so the same list works
/// whether or not folding is enabled.
pub fn normalize_document(
    raw: &RawDocument,
    config: &NormalizationConfig,
    rule: &PaginationRule,
) -> Result<NormalizedDocument, NormalizeError> {
    let stopwords: BTreeSet<String> = config
        .stopwords
        .iter()
        .map(|w| fold_letters(w, config))
        .collect();

    let mut tokens = Vec::new();
    let page_count = match rule {
        PaginationRule::FormFeeds => {
            let pages: Vec<&str> = raw.text.split('\u{000C}').collect();
            let mut ordinal = 0u32;
            for (i, page_text) in pages.iter().enumerate() {
                for surface in clean_tokens(page_text, config, &stopwords) {
                    tokens.push(Token {
                        surface,
                        page: i as u32 + 1,
                        ordinal,
                    });
                    ordinal += 1;
                }
            }
            pages.len() as u32
        }
        PaginationRule::WordsPerPage(w) => {
            if *w == 0 {
                return Err(NormalizeError::ZeroWordsPerPage);
            }
            let surfaces = clean_tokens(&raw.text, config, &stopwords);
            let count = surfaces.len() as u32;
            for (i, surface) in surfaces.into_iter().enumerate() {
                tokens.push(Token {
                    surface,
                    page: i as u32 / w + 1,
                    ordinal: i as u32,
                });
            }
            if count == 0 {
                1
            } else {
                (count - 1) / w + 1
            }
        }
    };

    Ok(NormalizedDocument {
        doc_id: raw.doc_id.clone(),
        tokens,
        page_count,
    })
}
