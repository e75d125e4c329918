//! CLI error kinds and their process exit codes.

use std::fmt;

use arindex::book_index::BookIndexError;
use arindex::corpus::CorpusError;
use arindex::evaluation::EvalError;
use arindex::inverted_index::InvIndexError;
use arindex::ngram::NgramError;
use arindex::normalize::NormalizeError;
use arindex::profile_store::StoreError;
use arindex::rooting::RootingError;

/// Exit codes: 0 success, 2 config, 3 input/decode, 4 empty result,
/// 5 duplicate document, 6 store conflict.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Input(String),
    Empty(String),
    Duplicate(String),
    Conflict(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Input(_) => 3,
            CliError::Empty(_) => 4,
            CliError::Duplicate(_) => 5,
            CliError::Conflict(_) => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m)
            | CliError::Input(m)
            | CliError::Empty(m)
            | CliError::Duplicate(m)
            | CliError::Conflict(m) => f.write_str(m),
        }
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> Self {
        match e {
            NormalizeError::ZeroWordsPerPage => CliError::Config(e.to_string()),
            NormalizeError::InvalidUtf8 { .. } | NormalizeError::Io { .. } => {
                CliError::Input(e.to_string())
            }
        }
    }
}

impl From<NgramError> for CliError {
    fn from(e: NgramError) -> Self {
        match e {
            NgramError::NoModels | NgramError::EmptyTrainingSet | NgramError::EmptyProfiles => {
                CliError::Empty(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::LabelExists(_) => CliError::Conflict(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RootingError> for CliError {
    fn from(e: RootingError) -> Self {
        match e {
            RootingError::Io { .. } => CliError::Input(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<BookIndexError> for CliError {
    fn from(e: BookIndexError) -> Self {
        match e {
            BookIndexError::EmptyIndex => CliError::Empty(e.to_string()),
            BookIndexError::InvalidBand(_) => CliError::Config(e.to_string()),
            BookIndexError::DocIdMismatch { .. } | BookIndexError::ParseExport(_) => {
                CliError::Input(e.to_string())
            }
            BookIndexError::Rooting(inner) => inner.into(),
        }
    }
}

impl From<InvIndexError> for CliError {
    fn from(e: InvIndexError) -> Self {
        match e {
            InvIndexError::DuplicateDocId(_) | InvIndexError::DuplicateContent { .. } => {
                CliError::Duplicate(e.to_string())
            }
            InvIndexError::UnsupportedVariant | InvIndexError::PhraseTooShort => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::EmptyAggregate => CliError::Empty(e.to_string()),
            EvalError::DocIdMismatch { .. } => CliError::Input(e.to_string()),
            EvalError::Rooting(inner) => inner.into(),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Input(e.to_string())
    }
}
