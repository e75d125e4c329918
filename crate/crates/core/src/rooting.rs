//! Weight-rank root extraction.
//!
//! Every letter of a word gets a weight (how often the letter is used as an
//! augmentation rather than a root consonant) and a rank (a positive number
//! derived from its position and the word length). The letters with the
//! smallest weight × rank products, kept in original order, form the root.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::normalize::is_arabic_letter;

pub const DEFAULT_ROOT_LEN: usize = 3;

/// The six admissible weight levels for table files.
pub const WEIGHT_LEVELS: [f64; 6] = [5.0, 3.5, 3.0, 2.0, 1.0, 0.0];

/// Default weight table shipped with the crate (tab-separated letter/weight
/// lines). See the file header for how the assignment was chosen.
pub const DEFAULT_WEIGHTS: &str = include_str!("../data/letter_weights.tsv");

#[derive(Debug, Error)]
pub enum RootingError {
    #[error("weights line {line}: expected LETTER<TAB>WEIGHT, got {content:?}")]
    MalformedWeightLine { line: usize, content: String },
    #[error("weights line {line}: {letter:?} is not a single Arabic letter")]
    NotAnArabicLetter { line: usize, letter: String },
    #[error("weights line {line}: weight {value} is not one of 5, 3.5, 3, 2, 1, 0")]
    WeightOffScale { line: usize, value: f64 },
    #[error("custom rank rule requires positive finite ranks")]
    NonPositiveRank,
    #[error("custom rank table covers {table_len} positions but the word has {word_len} letters")]
    RankTableTooShort { word_len: usize, table_len: usize },
    #[error("root length must be positive")]
    ZeroRootLen,
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Per-letter weights; letters absent from the map get `default_weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    weights: BTreeMap<char, f64>,
    default_weight: f64,
}

impl WeightTable {
    /// A table from arbitrary non-negative weights. File parsing enforces
    /// the six-level scale; this constructor does not, so callers can build
    /// scaled tables for experiments.
    pub fn new(weights: BTreeMap<char, f64>) -> Self {
        WeightTable {
            weights,
            default_weight: 0.0,
        }
    }

    pub fn weight(&self, letter: char) -> f64 {
        self.weights.get(&letter).copied().unwrap_or(self.default_weight)
    }

    /// Parses `LETTER<TAB>WEIGHT` lines. Blank lines and `#` comments are
    /// ignored; weights must sit on the six-level scale.
    pub fn parse(text: &str) -> Result<Self, RootingError> {
        let mut weights = BTreeMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (letter_part, weight_part) =
                line.split_once('\t')
                    .ok_or_else(|| RootingError::MalformedWeightLine {
                        line: i + 1,
                        content: line.to_string(),
                    })?;
            let letter_part = letter_part.trim();
            let mut chars = letter_part.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) if is_arabic_letter(c) => c,
                _ => {
                    return Err(RootingError::NotAnArabicLetter {
                        line: i + 1,
                        letter: letter_part.to_string(),
                    })
                }
            };
            let value: f64 =
                weight_part
                    .trim()
                    .parse()
                    .map_err(|_| RootingError::MalformedWeightLine {
                        line: i + 1,
                        content: line.to_string(),
                    })?;
            if !WEIGHT_LEVELS.contains(&value) {
                return Err(RootingError::WeightOffScale {
                    line: i + 1,
                    value,
                });
            }
            weights.insert(letter, value);
        }
        Ok(WeightTable::new(weights))
    }

    pub fn load(path: &Path) -> Result<Self, RootingError> {
        let text = std::fs::read_to_string(path).map_err(|source| RootingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The table shipped with the crate.
    pub fn default_table() -> Self {
        Self::parse(DEFAULT_WEIGHTS).expect("bundled weight table parses")
    }
}

/// How positions map to ranks.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum RankRule {
    /// rank(i) = i + 1. The simplest rule that grows with position and
    /// (through the number of positions) with word length.
    #[default]
    Positional,
    /// Explicit per-position ranks; errors on words longer than the table.
    Custom(Vec<f64>),
}

impl RankRule {
    pub fn custom(ranks: Vec<f64>) -> Result<Self, RootingError> {
        if ranks.is_empty() || ranks.iter().any(|r| !r.is_finite() || *r <= 0.0) {
            return Err(RootingError::NonPositiveRank);
        }
        Ok(RankRule::Custom(ranks))
    }

    /// Rank of 0-based position `i` in a word of `len` letters.
    pub fn rank(&self, i: usize, len: usize) -> Result<f64, RootingError> {
        match self {
            RankRule::Positional => Ok((i + 1) as f64),
            RankRule::Custom(ranks) => {
                if len > ranks.len() {
                    return Err(RootingError::RankTableTooShort {
                        word_len: len,
                        table_len: ranks.len(),
                    });
                }
                Ok(ranks[i])
            }
        }
    }
}

/// One row of the product trace.
#[derive(Debug, Clone, PartialEq)]
pub struct LetterScore {
    pub letter: char,
    pub weight: f64,
    pub rank: f64,
    pub product: f64,
}

/// A root extraction outcome with its full audit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    pub word: String,
    /// Order-preserving subsequence of `word`.
    pub root: String,
    pub products: Vec<LetterScore>,
    /// True when the word was shorter than the requested root length and
    /// was returned unchanged.
    pub short_word: bool,
}

/// Extracts the `root_len` letters with the smallest weight × rank products.
///
/// Product ties go to the earlier position; selected letters keep their
/// original order. Words shorter than `root_len` come back unchanged,
/// flagged via [`RootResult::short_word`].
pub fn extract_root(
    word: &str,
    table: &WeightTable,
    rule: &RankRule,
    root_len: usize,
) -> Result<RootResult, RootingError> {
    if root_len == 0 {
        return Err(RootingError::ZeroRootLen);
    }
    let letters: Vec<char> = word.chars().collect();
    let len = letters.len();
    let mut products = Vec::with_capacity(len);
    for (i, &letter) in letters.iter().enumerate() {
        let weight = table.weight(letter);
        let rank = rule.rank(i, len)?;
        products.push(LetterScore {
            letter,
            weight,
            rank,
            product: weight * rank,
        });
    }
    if len < root_len {
        return Ok(RootResult {
            word: word.to_string(),
            root: word.to_string(),
            products,
            short_word: true,
        });
    }

    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| {
        products[a]
            .product
            .total_cmp(&products[b].product)
            .then(a.cmp(&b))
    });
    let mut selected: Vec<usize> = order[..root_len].to_vec();
    selected.sort_unstable();
    let root: String = selected.iter().map(|&i| letters[i]).collect();

    Ok(RootResult {
        word: word.to_string(),
        root,
        products,
        short_word: false,
    })
}

/// Buckets terms by their extracted root. Every input term lands in exactly
/// one group; group order follows root codepoint order.
pub fn group_by_root(
    terms: &[String],
    table: &WeightTable,
    rule: &RankRule,
    root_len: usize,
) -> Result<BTreeMap<String, Vec<String>>, RootingError> {
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for term in terms {
        let result = extract_root(term, table, rule, root_len)?;
        groups.entry(result.root).or_default().push(term.clone());
    }
    Ok(groups)
}
