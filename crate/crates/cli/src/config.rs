//! Run configuration: an optional TOML file plus per-command flag
//! overrides. Unknown keys fail fast; every flag wins over its config
//! counterpart.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use arindex::book_index::RankingBand;
use arindex::ngram::{ProfileConfig, DEFAULT_PROFILE_SIZE, DEFAULT_WORD_LIMIT};
use arindex::normalize::{load_stopwords, NormalizationConfig, DEFAULT_WORDS_PER_PAGE};

use crate::error::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub normalization: NormalizationSection,
    #[serde(default)]
    pub profile: ProfileSection,
    #[serde(default)]
    pub band: BandSection,
    #[serde(default)]
    pub pagination: PaginationSection,
    #[serde(default)]
    pub paths: PathsSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizationSection {
    pub stoplist: Option<PathBuf>,
    /// Extra codepoints appended to the strip set.
    pub extra_strip_chars: Option<String>,
    pub fold_alef: Option<bool>,
    pub fold_teh_marbuta: Option<bool>,
    pub fold_alef_maqsura: Option<bool>,
    pub strip_definite_article: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    pub n: Option<usize>,
    pub size: Option<usize>,
    pub word_limit: Option<usize>,
    pub whole_document: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSection {
    pub high_cut: Option<f64>,
    pub min_freq: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaginationSection {
    pub words_per_page: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsSection {
    pub profile_store: Option<PathBuf>,
    pub weights: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let config: FileConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        for p in [&config.normalization.stoplist, &config.paths.weights]
            .into_iter()
            .flatten()
        {
            if !p.is_file() {
                return Err(CliError::Config(format!(
                    "{}: referenced file {} does not exist",
                    path.display(),
                    p.display()
                )));
            }
        }
        Ok(config)
    }
}

/// Normalization flags shared by every command that reads documents.
#[derive(Debug, Clone, Default, Args)]
pub struct NormFlags {
    /// Synthetic page size for inputs without form-feed breaks
    #[arg(long, value_name = "N")]
    pub words_per_page: Option<u32>,
    /// Stop-word list file, one term per line (replaces the built-in list)
    #[arg(long, value_name = "FILE")]
    pub stoplist: Option<PathBuf>,
    /// Fold أ / إ / آ to ا
    #[arg(long)]
    pub fold_alef: bool,
    /// Fold ة to ه
    #[arg(long)]
    pub fold_teh_marbuta: bool,
    /// Fold ى to ي
    #[arg(long)]
    pub fold_alef_maqsura: bool,
    /// Strip a leading ال from tokens
    #[arg(long)]
    pub strip_definite_article: bool,
}

/// Profile flags shared by profile, train, and classify.
#[derive(Debug, Clone, Default, Args)]
pub struct ProfileFlags {
    /// N-gram size, 2 to 5
    #[arg(short, long)]
    pub n: Option<usize>,
    /// Number of top grams kept per profile
    #[arg(long, value_name = "K")]
    pub size: Option<usize>,
    /// Tokens consumed per document
    #[arg(long, value_name = "W", conflicts_with = "whole_document")]
    pub word_limit: Option<usize>,
    /// Consume whole documents instead of the leading word window
    #[arg(long)]
    pub whole_document: bool,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct Settings {
    pub normalization: NormalizationConfig,
    pub profile: ProfileConfig,
    pub band: RankingBand,
    pub words_per_page: u32,
    pub profile_store: Option<PathBuf>,
    pub weights: Option<PathBuf>,
}

pub fn resolve(
    file: &FileConfig,
    norm: &NormFlags,
    prof: &ProfileFlags,
) -> Result<Settings, CliError> {
    let mut normalization = NormalizationConfig::default();
    if let Some(path) = norm.stoplist.as_ref().or(file.normalization.stoplist.as_ref()) {
        normalization.stopwords = load_stopwords(path)?;
    }
    if let Some(extra) = &file.normalization.extra_strip_chars {
        normalization.strip_chars.extend(extra.chars());
    }
    let on = |flag: bool, section: Option<bool>| flag || section.unwrap_or(false);
    normalization.fold_alef = on(norm.fold_alef, file.normalization.fold_alef);
    normalization.fold_teh_marbuta = on(norm.fold_teh_marbuta, file.normalization.fold_teh_marbuta);
    normalization.fold_alef_maqsura =
        on(norm.fold_alef_maqsura, file.normalization.fold_alef_maqsura);
    normalization.strip_definite_article = on(
        norm.strip_definite_article,
        file.normalization.strip_definite_article,
    );

    let words_per_page = norm
        .words_per_page
        .or(file.pagination.words_per_page)
        .unwrap_or(DEFAULT_WORDS_PER_PAGE);
    if words_per_page == 0 {
        return Err(CliError::Config("words-per-page must be positive".into()));
    }

    let whole_document = prof.whole_document || file.profile.whole_document.unwrap_or(false);
    let profile = ProfileConfig {
        n: prof.n.or(file.profile.n).unwrap_or(3),
        profile_size: prof.size.or(file.profile.size).unwrap_or(DEFAULT_PROFILE_SIZE),
        word_limit: if whole_document {
            None
        } else {
            Some(
                prof.word_limit
                    .or(file.profile.word_limit)
                    .unwrap_or(DEFAULT_WORD_LIMIT),
            )
        },
    };
    profile.validate().map_err(CliError::from)?;

    let band = RankingBand {
        high_cut: file.band.high_cut.unwrap_or(RankingBand::default().high_cut),
        low_min_freq: file.band.min_freq.unwrap_or(RankingBand::default().low_min_freq),
    };

    Ok(Settings {
        normalization,
        profile,
        band,
        words_per_page,
        profile_store: file.paths.profile_store.clone(),
        weights: file.paths.weights.clone(),
    })
}
