//! N-gram frequency profiles, rank-order (Manhattan) distance, Dice
//! similarity, and profile-based document classification.
//!
//! A profile is the top-K character N-grams of a document ordered by
//! descending frequency. Two profiles are compared either by summing rank
//! displacements (Manhattan, smaller is closer) or by gram-set overlap
//! (Dice, larger is closer). Classification picks the nearest trained class
//! profile under either metric.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::normalize::NormalizedDocument;

pub const MIN_N: usize = 2;
pub const MAX_N: usize = 5;
pub const DEFAULT_PROFILE_SIZE: usize = 100;
pub const DEFAULT_WORD_LIMIT: usize = 100;

#[derive(Debug, Error)]
pub enum NgramError {
    #[error("n must be between {MIN_N} and {MAX_N}, got {0}")]
    InvalidN(usize),
    #[error("invalid profile configuration: {0}")]
    InvalidConfig(String),
    #[error("gram {gram:?} is not {expected} letters long")]
    InvalidGram { gram: String, expected: usize },
    #[error("duplicate gram {0:?}")]
    DuplicateGram(String),
    #[error("profiles have different n: {0} vs {1}")]
    IncompatibleProfiles(usize, usize),
    #[error("dice similarity is undefined for two empty profiles")]
    EmptyProfiles,
    #[error("no class models available")]
    NoModels,
    #[error("training requires at least one document")]
    EmptyTrainingSet,
}

/// Knobs for profile building.
///
/// `word_limit` caps how many tokens of a document are consumed;
/// `profile_size` caps how many grams the profile keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileConfig {
    pub n: usize,
    pub profile_size: usize,
    /// `None` consumes the whole document.
    pub word_limit: Option<usize>,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            n: 3,
            profile_size: DEFAULT_PROFILE_SIZE,
            word_limit: Some(DEFAULT_WORD_LIMIT),
        }
    }
}

impl ProfileConfig {
    pub fn with_n(n: usize) -> Self {
        ProfileConfig {
            n,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), NgramError> {
        if !(MIN_N..=MAX_N).contains(&self.n) {
            return Err(NgramError::InvalidN(self.n));
        }
        if self.profile_size == 0 {
            return Err(NgramError::InvalidConfig(
                "profile_size must be positive".into(),
            ));
        }
        if self.word_limit == Some(0) {
            return Err(NgramError::InvalidConfig(
                "word_limit must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A rank-ordered N-gram frequency profile.
///
/// Entries are sorted by frequency descending, ties broken by gram codepoint
/// order, so identical inputs always produce bit-identical profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramProfile {
    n: usize,
    entries: Vec<(String, u64)>,
    source_id: String,
}

impl NGramProfile {
    /// Builds a profile from raw gram counts: merge duplicates, sort by
    /// frequency descending with the codepoint tie-break, keep the top
    /// `profile_size`.
    pub fn from_counts(
        n: usize,
        counts: impl IntoIterator<Item = (String, u64)>,
        profile_size: usize,
        source_id: impl Into<String>,
    ) -> Result<Self, NgramError> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(NgramError::InvalidN(n));
        }
        if profile_size == 0 {
            return Err(NgramError::InvalidConfig(
                "profile_size must be positive".into(),
            ));
        }
        let mut merged: HashMap<String, u64> = HashMap::new();
        for (gram, count) in counts {
            if gram.chars().count() != n {
                return Err(NgramError::InvalidGram { gram, expected: n });
            }
            *merged.entry(gram).or_insert(0) += count;
        }
        let mut entries: Vec<(String, u64)> = merged.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries.truncate(profile_size);
        Ok(NGramProfile {
            n,
            entries,
            source_id: source_id.into(),
        })
    }

    /// Builds a profile whose rank order is exactly the given gram sequence
    /// (synthetic strictly-descending frequencies).
    pub fn from_ranked_grams(
        n: usize,
        grams: &[&str],
        source_id: impl Into<String>,
    ) -> Result<Self, NgramError> {
        let mut seen = HashSet::new();
        for gram in grams {
            if !seen.insert(*gram) {
                return Err(NgramError::DuplicateGram((*gram).to_string()));
            }
        }
        let len = grams.len() as u64;
        let counts = grams
            .iter()
            .enumerate()
            .map(|(i, g)| (g.to_string(), len - i as u64));
        Self::from_counts(n, counts, grams.len().max(1), source_id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries in rank order: `(gram, frequency)`.
    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    /// 0-based rank of a gram, if present.
    pub fn rank_of(&self, gram: &str) -> Option<usize> {
        self.entries.iter().position(|(g, _)| g == gram)
    }
}

/// Sliding character windows of width `n` over a single token. A token
/// shorter than `n` yields nothing; grams never cross token boundaries.
pub fn extract_ngrams(token: &str, n: usize) -> Result<Vec<String>, NgramError> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(NgramError::InvalidN(n));
    }
    let chars: Vec<char> = token.chars().collect();
    if chars.len() < n {
        return Ok(Vec::new());
    }
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

fn count_grams(
    counts: &mut HashMap<String, u64>,
    doc: &NormalizedDocument,
    config: &ProfileConfig,
) -> Result<(), NgramError> {
    let limit = config.word_limit.unwrap_or(usize::MAX);
    for token in doc.tokens.iter().take(limit) {
        for gram in extract_ngrams(&token.surface, config.n)? {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    Ok(())
}

/// Builds the N-gram profile of a document. An empty document yields an
/// empty profile, not an error.
pub fn build_profile(
    doc: &NormalizedDocument,
    config: &ProfileConfig,
) -> Result<NGramProfile, NgramError> {
    config.validate()?;
    let mut counts = HashMap::new();
    count_grams(&mut counts, doc, config)?;
    NGramProfile::from_counts(config.n, counts, config.profile_size, doc.doc_id.clone())
}

/// Rank-order distance between two profiles with the default penalty
/// (`p.len()`) for grams of `p` missing from `q`.
pub fn manhattan_distance(p: &NGramProfile, q: &NGramProfile) -> Result<u64, NgramError> {
    manhattan_distance_with_penalty(p, q, p.len() as u64)
}

/// Rank-order distance with an explicit missing-gram penalty.
///
/// Sums `|rank_p - rank_q|` over the grams of `p`; a gram absent from `q`
/// contributes `penalty` (the maximum-displacement convention). Symmetric
/// whenever the two profiles have equal length.
pub fn manhattan_distance_with_penalty(
    p: &NGramProfile,
    q: &NGramProfile,
    penalty: u64,
) -> Result<u64, NgramError> {
    if p.n() != q.n() {
        return Err(NgramError::IncompatibleProfiles(p.n(), q.n()));
    }
    let q_ranks: HashMap<&str, usize> = q
        .entries()
        .iter()
        .enumerate()
        .map(|(rank, (gram, _))| (gram.as_str(), rank))
        .collect();
    let mut sum = 0u64;
    for (rank_p, (gram, _)) in p.entries().iter().enumerate() {
        sum += match q_ranks.get(gram.as_str()) {
            Some(&rank_q) => (rank_p as i64 - rank_q as i64).unsigned_abs(),
            None => penalty,
        };
    }
    Ok(sum)
}

/// Dice coefficient over the gram sets of two profiles:
/// `2|p ∩ q| / (|p| + |q|)`. Undefined (an error) when both are empty.
pub fn dice_similarity(p: &NGramProfile, q: &NGramProfile) -> Result<f64, NgramError> {
    if p.n() != q.n() {
        return Err(NgramError::IncompatibleProfiles(p.n(), q.n()));
    }
    let total = p.len() + q.len();
    if total == 0 {
        return Err(NgramError::EmptyProfiles);
    }
    let p_set: HashSet<&str> = p.entries().iter().map(|(g, _)| g.as_str()).collect();
    let shared = q
        .entries()
        .iter()
        .filter(|(g, _)| p_set.contains(g.as_str()))
        .count();
    Ok(2.0 * shared as f64 / total as f64)
}

/// A trained class profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassModel {
    pub class_label: String,
    pub profile: NGramProfile,
    pub trained_doc_count: u32,
}

/// Pools gram counts across the training documents of one class (each
/// truncated to the configured word limit) and keeps the top grams.
pub fn train_class(
    docs: &[NormalizedDocument],
    label: &str,
    config: &ProfileConfig,
) -> Result<ClassModel, NgramError> {
    config.validate()?;
    if docs.is_empty() {
        return Err(NgramError::EmptyTrainingSet);
    }
    let mut counts = HashMap::new();
    for doc in docs {
        count_grams(&mut counts, doc, config)?;
    }
    let profile = NGramProfile::from_counts(config.n, counts, config.profile_size, label)?;
    Ok(ClassModel {
        class_label: label.to_string(),
        profile,
        trained_doc_count: docs.len() as u32,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Manhattan,
    Dice,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Manhattan => "manhattan",
            Metric::Dice => "dice",
        }
    }
}

/// Outcome of classifying one document: the winning class plus the full
/// score table, best class first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub chosen_class: String,
    pub metric: Metric,
    /// One `(class_label, score)` per model, ranked best first. Manhattan
    /// ranks ascending, Dice descending; score ties break on label order.
    pub scores: Vec<(String, f64)>,
}

/// Classifies a prebuilt profile against a set of class models.
///
/// `penalty` overrides the Manhattan missing-gram penalty; `None` uses the
/// document profile length.
pub fn classify_profile(
    profile: &NGramProfile,
    models: &[ClassModel],
    metric: Metric,
    penalty: Option<u64>,
) -> Result<ClassificationResult, NgramError> {
    if models.is_empty() {
        return Err(NgramError::NoModels);
    }
    let mut scores = Vec::with_capacity(models.len());
    for model in models {
        let score = match metric {
            Metric::Manhattan => {
                let penalty = penalty.unwrap_or(profile.len() as u64);
                manhattan_distance_with_penalty(profile, &model.profile, penalty)? as f64
            }
            Metric::Dice => dice_similarity(profile, &model.profile)?,
        };
        scores.push((model.class_label.clone(), score));
    }
    scores.sort_by(|a, b| {
        let by_score = match metric {
            Metric::Manhattan => a.1.total_cmp(&b.1),
            Metric::Dice => b.1.total_cmp(&a.1),
        };
        by_score.then_with(|| a.0.cmp(&b.0))
    });
    Ok(ClassificationResult {
        chosen_class: scores[0].0.clone(),
        metric,
        scores,
    })
}

/// Builds the document profile and classifies it in one step.
pub fn classify(
    doc: &NormalizedDocument,
    models: &[ClassModel],
    metric: Metric,
    config: &ProfileConfig,
) -> Result<ClassificationResult, NgramError> {
    for model in models {
        if model.profile.n() != config.n {
            return Err(NgramError::IncompatibleProfiles(config.n, model.profile.n()));
        }
    }
    let profile = build_profile(doc, config)?;
    classify_profile(&profile, models, metric, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::Token;

    fn doc_from_words(doc_id: &str, words: &[&str]) -> NormalizedDocument {
        NormalizedDocument {
            doc_id: doc_id.to_string(),
            tokens: words
                .iter()
                .enumerate()
                .map(|(i, w)| Token {
                    surface: w.to_string(),
                    page: 1,
                    ordinal: i as u32,
                })
                .collect(),
            page_count: 1,
        }
    }

    #[test]
    fn trigrams_of_almusamaha() {
        let grams = extract_ngrams("المسامحة", 3).unwrap();
        assert_eq!(grams, vec!["الم", "لمس", "مسا", "سام", "امح", "محة"]);
    }

    #[test]
    fn token_shorter_than_n_yields_nothing() {
        assert!(extract_ngrams("اب", 3).unwrap().is_empty());
    }

    #[test]
    fn window_count_is_len_minus_n_plus_one() {
        // Oracle: explicit sliding-window enumeration.
        let token = "المسامحة";
        let chars: Vec<char> = token.chars().collect();
        for n in MIN_N..=MAX_N {
            let mut expected = Vec::new();
            for start in 0..=chars.len() - n {
                expected.push(chars[start..start + n].iter().collect::<String>());
            }
            assert_eq!(extract_ngrams(token, n).unwrap(), expected);
            assert_eq!(expected.len(), chars.len() - n + 1);
        }
        assert_eq!(extract_ngrams(token, 4).unwrap().len(), 5);
    }

    #[test]
    fn n_out_of_range_is_rejected() {
        assert!(matches!(extract_ngrams("كتاب", 1), Err(NgramError::InvalidN(1))));
        assert!(matches!(extract_ngrams("كتاب", 6), Err(NgramError::InvalidN(6))));
    }

    #[test]
    fn profile_of_single_word() {
        let doc = doc_from_words("d", &["المسامحة"]);
        let profile = build_profile(&doc, &ProfileConfig::with_n(3)).unwrap();
        assert_eq!(profile.len(), 6);
        assert!(profile.entries().iter().all(|(_, f)| *f == 1));
    }

    #[test]
    fn profile_counts_repeated_windows() {
        let doc = doc_from_words("d", &["ببب"; 5]);
        let profile = build_profile(&doc, &ProfileConfig::with_n(2)).unwrap();
        // 2 windows per token, 5 tokens.
        assert_eq!(profile.entries(), &[("بب".to_string(), 10)]);
    }

    #[test]
    fn profile_truncates_to_size() {
        let doc = doc_from_words("d", &["المسامحة", "مدرسة", "كتاب"]);
        let config = ProfileConfig {
            n: 3,
            profile_size: 3,
            word_limit: None,
        };
        let profile = build_profile(&doc, &config).unwrap();
        assert!(profile.len() <= 3);
    }

    #[test]
    fn word_limit_caps_consumed_tokens() {
        let mut words = vec!["ببب"; 100];
        words.extend(vec!["تتت"; 50]);
        let doc = doc_from_words("d", &words);
        let config = ProfileConfig {
            n: 3,
            profile_size: 100,
            word_limit: Some(100),
        };
        let profile = build_profile(&doc, &config).unwrap();
        assert_eq!(profile.rank_of("تتت"), None);
        assert_eq!(profile.rank_of("ببب"), Some(0));
    }

    #[test]
    fn empty_document_yields_empty_profile() {
        let doc = doc_from_words("d", &[]);
        let profile = build_profile(&doc, &ProfileConfig::default()).unwrap();
        assert!(profile.is_empty());
    }

    #[test]
    fn manhattan_worked_example_is_six() {
        let p1 =
            NGramProfile::from_ranked_grams(2, &["th", "he", "ma", "an", "in", "ca", "ar"], "p1")
                .unwrap();
        let p2 =
            NGramProfile::from_ranked_grams(2, &["ma", "he", "an", "th", "in", "ca", "ar"], "p2")
                .unwrap();
        assert_eq!(manhattan_distance(&p1, &p2).unwrap(), 6);
        assert_eq!(manhattan_distance(&p2, &p1).unwrap(), 6);
    }

    #[test]
    fn manhattan_self_distance_is_zero() {
        let p = NGramProfile::from_ranked_grams(3, &["الم", "لمس", "مسا"], "p").unwrap();
        assert_eq!(manhattan_distance(&p, &p).unwrap(), 0);
    }

    #[test]
    fn manhattan_matches_nested_loop_oracle() {
        let p = NGramProfile::from_ranked_grams(2, &["aa", "bb", "cc", "dd", "ee"], "p").unwrap();
        let q = NGramProfile::from_ranked_grams(2, &["cc", "xx", "aa", "yy", "bb"], "q").unwrap();

        // Oracle: independent nested-loop rank lookup with penalty 5.
        let mut expected = 0u64;
        for (rank_p, (gram, _)) in p.entries().iter().enumerate() {
            let mut found = None;
            for (rank_q, (other, _)) in q.entries().iter().enumerate() {
                if other == gram {
                    found = Some(rank_q);
                }
            }
            expected += match found {
                Some(rank_q) => (rank_p as i64 - rank_q as i64).unsigned_abs(),
                None => 5,
            };
        }
        assert_eq!(manhattan_distance(&p, &q).unwrap(), expected);
        // Shared: aa |0-2|=2, bb |1-4|=3, cc |2-0|=2; missing dd, ee: 5 + 5.
        assert_eq!(expected, 17);
    }

    #[test]
    fn manhattan_rejects_mismatched_n() {
        let p = NGramProfile::from_ranked_grams(2, &["aa"], "p").unwrap();
        let q = NGramProfile::from_ranked_grams(3, &["aaa"], "q").unwrap();
        assert!(matches!(
            manhattan_distance(&p, &q),
            Err(NgramError::IncompatibleProfiles(2, 3))
        ));
    }

    #[test]
    fn dice_worked_example() {
        let gram = |prefix: char, i: u8| format!("{prefix}{}", (b'a' + i) as char);
        let shared: Vec<String> = (0..7).map(|i| gram('a', i)).collect();
        let mut p_grams: Vec<&str> = shared.iter().map(String::as_str).collect();
        let p_only: Vec<String> = (0..13).map(|i| gram('b', i)).collect();
        p_grams.extend(p_only.iter().map(String::as_str));
        let mut q_grams: Vec<&str> = shared.iter().map(String::as_str).collect();
        let q_only: Vec<String> = (0..3).map(|i| gram('c', i)).collect();
        q_grams.extend(q_only.iter().map(String::as_str));

        let p = NGramProfile::from_ranked_grams(2, &p_grams, "p").unwrap();
        let q = NGramProfile::from_ranked_grams(2, &q_grams, "q").unwrap();
        assert_eq!(p.len(), 20);
        assert_eq!(q.len(), 10);
        let dice = dice_similarity(&p, &q).unwrap();
        assert!((dice - 0.46667).abs() < 0.0005, "dice = {}", dice);
        assert_eq!(dice, dice_similarity(&q, &p).unwrap());
    }

    #[test]
    fn dice_self_similarity_is_one() {
        let p = NGramProfile::from_ranked_grams(3, &["الم", "لمس"], "p").unwrap();
        assert_eq!(dice_similarity(&p, &p).unwrap(), 1.0);
    }

    #[test]
    fn dice_disjoint_is_zero() {
        let p = NGramProfile::from_ranked_grams(2, &["aa"], "p").unwrap();
        let q = NGramProfile::from_ranked_grams(2, &["bb"], "q").unwrap();
        assert_eq!(dice_similarity(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn dice_of_two_empty_profiles_is_an_error() {
        let empty = NGramProfile::from_counts(2, Vec::new(), 10, "e").unwrap();
        assert!(matches!(
            dice_similarity(&empty, &empty),
            Err(NgramError::EmptyProfiles)
        ));
    }

    #[test]
    fn training_on_one_doc_equals_its_profile() {
        let doc = doc_from_words("d", &["المسامحة", "كتاب"]);
        let config = ProfileConfig::with_n(3);
        let model = train_class(std::slice::from_ref(&doc), "label", &config).unwrap();
        let profile = build_profile(&doc, &config).unwrap();
        assert_eq!(model.profile.entries(), profile.entries());
        assert_eq!(model.trained_doc_count, 1);
    }

    fn three_letter_words(base: [char; 3]) -> Vec<String> {
        // 60 distinct three-letter words, hence 60 distinct trigrams.
        (0..60u32)
            .map(|i| {
                let c = char::from_u32(base[0] as u32 + (i % 4)).unwrap();
                let d = char::from_u32(base[1] as u32 + (i / 4 % 4)).unwrap();
                let e = char::from_u32(base[2] as u32 + (i / 16)).unwrap();
                format!("{c}{d}{e}")
            })
            .collect()
    }

    #[test]
    fn training_pools_disjoint_docs() {
        // Disjoint letter blocks guarantee disjoint gram sets.
        let words_a = three_letter_words(['ب', 'د', 'س']);
        let words_b = three_letter_words(['ط', 'ف', 'م']);
        let doc_a = doc_from_words("a", &words_a.iter().map(String::as_str).collect::<Vec<_>>());
        let doc_b = doc_from_words("b", &words_b.iter().map(String::as_str).collect::<Vec<_>>());
        let config = ProfileConfig {
            n: 3,
            profile_size: 100,
            word_limit: None,
        };
        let pa = build_profile(&doc_a, &config).unwrap();
        let pb = build_profile(&doc_b, &config).unwrap();
        assert_eq!(pa.len(), 60);

        // Oracle: merged count map, sorted, truncated.
        let mut merged: HashMap<String, u64> = HashMap::new();
        for (g, f) in pa.entries().iter().chain(pb.entries()) {
            *merged.entry(g.clone()).or_insert(0) += f;
        }
        let model = train_class(&[doc_a, doc_b], "ab", &config).unwrap();
        assert_eq!(model.profile.len(), 100);
        for (gram, freq) in model.profile.entries() {
            assert_eq!(merged[gram], *freq);
        }
    }

    #[test]
    fn training_on_empty_set_is_an_error() {
        assert!(matches!(
            train_class(&[], "x", &ProfileConfig::default()),
            Err(NgramError::EmptyTrainingSet)
        ));
    }

    #[test]
    fn classify_single_model_always_wins() {
        let doc = doc_from_words("d", &["كتاب"]);
        let model = train_class(
            &[doc_from_words("t", &["مدرسة"])],
            "only",
            &ProfileConfig::with_n(3),
        )
        .unwrap();
        for metric in [Metric::Manhattan, Metric::Dice] {
            let result =
                classify(&doc, std::slice::from_ref(&model), metric, &ProfileConfig::with_n(3))
                    .unwrap();
            assert_eq!(result.chosen_class, "only");
            assert_eq!(result.scores.len(), 1);
        }
    }

    #[test]
    fn classify_exact_match_has_zero_distance() {
        let doc = doc_from_words("d", &["المسامحة", "كتاب"]);
        let config = ProfileConfig::with_n(3);
        let matching = train_class(std::slice::from_ref(&doc), "a", &config).unwrap();
        let other = train_class(&[doc_from_words("t", &["مدرسة"])], "b", &config).unwrap();
        let result = classify(&doc, &[other, matching], Metric::Manhattan, &config).unwrap();
        assert_eq!(result.chosen_class, "a");
        assert_eq!(result.scores[0], ("a".to_string(), 0.0));
        // Every class is scored.
        assert_eq!(result.scores.len(), 2);
    }

    #[test]
    fn classify_breaks_score_ties_by_label() {
        let doc = doc_from_words("d", &["المسامحة"]);
        let config = ProfileConfig::with_n(3);
        // Two classes trained on identical text score identically.
        let train = doc_from_words("t", &["مدرسة", "كتاب"]);
        let model_b = train_class(std::slice::from_ref(&train), "ب", &config).unwrap();
        let model_a = train_class(std::slice::from_ref(&train), "ا", &config).unwrap();
        for metric in [Metric::Manhattan, Metric::Dice] {
            let result = classify(
                &doc,
                &[model_b.clone(), model_a.clone()],
                metric,
                &config,
            )
            .unwrap();
            assert_eq!(result.scores[0].1, result.scores[1].1);
            assert_eq!(result.chosen_class, "ا");
        }
    }

    #[test]
    fn classify_empty_store_is_an_error() {
        let doc = doc_from_words("d", &["كتاب"]);
        assert!(matches!(
            classify(&doc, &[], Metric::Dice, &ProfileConfig::default()),
            Err(NgramError::NoModels)
        ));
    }

    #[test]
    fn classify_rejects_mismatched_model_n() {
        let doc = doc_from_words("d", &["كتاب"]);
        let model = train_class(
            &[doc_from_words("t", &["مدرسة"])],
            "a",
            &ProfileConfig::with_n(4),
        )
        .unwrap();
        assert!(matches!(
            classify(&doc, &[model], Metric::Manhattan, &ProfileConfig::with_n(3)),
            Err(NgramError::IncompatibleProfiles(3, 4))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random short documents over a small Arabic alphabet.
        fn word_stream() -> impl Strategy<Value = Vec<String>> {
            proptest::collection::vec(
                proptest::collection::vec(
                    proptest::char::range('\u{0628}', '\u{062E}'),
                    1..8,
                )
                .prop_map(|chars| chars.into_iter().collect::<String>()),
                0..40,
            )
        }

        fn brute_force_counts(words: &[String], n: usize, limit: usize) -> HashMap<String, u64> {
            let mut counts = HashMap::new();
            for word in words.iter().take(limit) {
                let chars: Vec<char> = word.chars().collect();
                if chars.len() < n {
                    continue;
                }
                for start in 0..=chars.len() - n {
                    let gram: String = chars[start..start + n].iter().collect();
                    *counts.entry(gram).or_insert(0) += 1;
                }
            }
            counts
        }

        proptest! {
            #[test]
            fn profile_matches_brute_force_counter(
                words in word_stream(),
                n in MIN_N..=MAX_N,
                size in 1usize..30,
            ) {
                let refs: Vec<&str> = words.iter().map(String::as_str).collect();
                let doc = doc_from_words("d", &refs);
                let config = ProfileConfig { n, profile_size: size, word_limit: Some(10) };
                let profile = build_profile(&doc, &config).unwrap();
                let expected = brute_force_counts(&words, n, 10);

                prop_assert!(profile.len() <= size);
                for (gram, freq) in profile.entries() {
                    prop_assert_eq!(expected.get(gram), Some(freq));
                }
                // Rank order: frequency descending, codepoint tie-break.
                for pair in profile.entries().windows(2) {
                    let ordered = pair[0].1 > pair[1].1
                        || (pair[0].1 == pair[1].1 && pair[0].0 < pair[1].0);
                    prop_assert!(ordered, "rank order violated: {:?}", pair);
                }
                // Nothing kept ranks below anything dropped.
                if profile.len() == size {
                    let min_kept = profile.entries().last().unwrap();
                    for (gram, freq) in &expected {
                        if profile.rank_of(gram).is_none() {
                            let dropped_sorts_after = *freq < min_kept.1
                                || (*freq == min_kept.1 && *gram > min_kept.0);
                            prop_assert!(dropped_sorts_after);
                        }
                    }
                }
            }

            #[test]
            fn manhattan_symmetric_for_equal_sizes(
                words_a in word_stream(),
                words_b in word_stream(),
            ) {
                let refs_a: Vec<&str> = words_a.iter().map(String::as_str).collect();
                let refs_b: Vec<&str> = words_b.iter().map(String::as_str).collect();
                let config = ProfileConfig { n: 2, profile_size: 15, word_limit: None };
                let p = build_profile(&doc_from_words("a", &refs_a), &config).unwrap();
                let q = build_profile(&doc_from_words("b", &refs_b), &config).unwrap();
                let d_pq = manhattan_distance(&p, &q).unwrap();
                let d_qp = manhattan_distance(&q, &p).unwrap();
                if p.len() == q.len() {
                    prop_assert_eq!(d_pq, d_qp);
                }
                prop_assert_eq!(manhattan_distance(&p, &p).unwrap(), 0);
            }

            #[test]
            fn dice_bounded_and_symmetric(
                words_a in word_stream(),
                words_b in word_stream(),
            ) {
                let refs_a: Vec<&str> = words_a.iter().map(String::as_str).collect();
                let refs_b: Vec<&str> = words_b.iter().map(String::as_str).collect();
                let config = ProfileConfig { n: 2, profile_size: 15, word_limit: None };
                let p = build_profile(&doc_from_words("a", &refs_a), &config).unwrap();
                let q = build_profile(&doc_from_words("b", &refs_b), &config).unwrap();
                if p.len() + q.len() > 0 {
                    let d = dice_similarity(&p, &q).unwrap();
                    prop_assert!((0.0..=1.0).contains(&d));
                    prop_assert_eq!(d, dice_similarity(&q, &p).unwrap());
                }
            }

            #[test]
            fn frequency_scaling_preserves_ranks_and_distances(
                words in word_stream(),
                scale in 2u64..10,
            ) {
                let refs: Vec<&str> = words.iter().map(String::as_str).collect();
                let config = ProfileConfig { n: 2, profile_size: 20, word_limit: None };
                let p = build_profile(&doc_from_words("a", &refs), &config).unwrap();
                let scaled = NGramProfile::from_counts(
                    2,
                    p.entries().iter().map(|(g, f)| (g.clone(), f * scale)),
                    20,
                    "scaled",
                ).unwrap();
                let order: Vec<&str> =
                    p.entries().iter().map(|(g, _)| g.as_str()).collect();
                let scaled_order: Vec<&str> =
                    scaled.entries().iter().map(|(g, _)| g.as_str()).collect();
                prop_assert_eq!(order, scaled_order);
                prop_assert_eq!(
                    manhattan_distance(&p, &scaled).unwrap(),
                    0
                );
            }
        }
    }
}
