//! On-disk store for trained class profiles: one JSON record per class in a
//! directory, keyed by class label.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ngram::{ClassModel, NGramProfile, NgramError};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("class {0:?} already exists in the store (pass overwrite to replace)")]
    LabelExists(String),
    #[error("class {0:?} not found in the store")]
    MissingLabel(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: invalid profile record: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Record {
        path: String,
        source: NgramError,
    },
}

/// Serialized form of one class profile.
#[derive(Debug, Serialize, Deserialize)]
struct ProfileRecord {
    label: String,
    n: usize,
    trained_doc_count: u32,
    /// `[gram, frequency]` pairs in rank order.
    entries: Vec<(String, u64)>,
}

/// A directory of per-class profile records.
///
/// Training writes records; classification reads an immutable snapshot via
/// [`ProfileStore::load_all`].
#[derive(Debug, Clone)]
pub struct ProfileStore {
    dir: PathBuf,
}

impl ProfileStore {
    /// Opens (and creates, if needed) a store directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|source| StoreError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(ProfileStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record_path(&self, label: &str) -> PathBuf {
        self.dir.join(format!("{label}.json"))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.record_path(label).is_file()
    }

    /// Persists a model. Fails when the label is already present and
    /// `overwrite` is false; the existing record is left untouched.
    pub fn save(&self, model: &ClassModel, overwrite: bool) -> Result<(), StoreError> {
        let path = self.record_path(&model.class_label);
        if !overwrite && path.exists() {
            return Err(StoreError::LabelExists(model.class_label.clone()));
        }
        let record = ProfileRecord {
            label: model.class_label.clone(),
            n: model.profile.n(),
            trained_doc_count: model.trained_doc_count,
            entries: model.profile.entries().to_vec(),
        };
        let json = serde_json::to_string_pretty(&record).expect("profile record serializes");
        write_atomic(&path, json.as_bytes()).map_err(|source| StoreError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(&self, label: &str) -> Result<ClassModel, StoreError> {
        let path = self.record_path(label);
        if !path.is_file() {
            return Err(StoreError::MissingLabel(label.to_string()));
        }
        self.load_record(&path)
    }

    fn load_record(&self, path: &Path) -> Result<ClassModel, StoreError> {
        let text = std::fs::read_to_string(path).map_err(|source| StoreError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let record: ProfileRecord =
            serde_json::from_str(&text).map_err(|source| StoreError::Parse {
                path: path.display().to_string(),
                source,
            })?;
        let size = record.entries.len().max(1);
        let profile = NGramProfile::from_counts(record.n, record.entries, size, &record.label)
            .map_err(|source| StoreError::Record {
                path: path.display().to_string(),
                source,
            })?;
        Ok(ClassModel {
            class_label: record.label,
            profile,
            trained_doc_count: record.trained_doc_count,
        })
    }

    /// Labels present in the store, in codepoint order.
    pub fn labels(&self) -> Result<Vec<String>, StoreError> {
        let entries = std::fs::read_dir(&self.dir).map_err(|source| StoreError::Io {
            path: self.dir.display().to_string(),
            source,
        })?;
        let mut labels = BTreeSet::new();
        for entry in entries {
            let entry = entry.map_err(|source| StoreError::Io {
                path: self.dir.display().to_string(),
                source,
            })?;
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) == Some("json") {
                if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                    labels.insert(stem.to_string());
                }
            }
        }
        Ok(labels.into_iter().collect())
    }

    /// Loads every class model, sorted by label. This is the snapshot the
    /// classify command works from.
    pub fn load_all(&self) -> Result<Vec<ClassModel>, StoreError> {
        self.labels()?
            .into_iter()
            .map(|label| self.load(&label))
            .collect()
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ngram::{train_class, ProfileConfig};
    use crate::normalize::{NormalizedDocument, Token};

    fn sample_model(label: &str) -> ClassModel {
        let doc = NormalizedDocument {
            doc_id: "t".into(),
            tokens: ["المسامحة", "كتاب", "كتاب"]
                .iter()
                .enumerate()
                .map(|(i, w)| Token {
                    surface: w.to_string(),
                    page: 1,
                    ordinal: i as u32,
                })
                .collect(),
            page_count: 1,
        };
        train_class(&[doc], label, &ProfileConfig::with_n(3)).unwrap()
    }

    #[test]
    fn round_trip_preserves_model_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::open(dir.path()).unwrap();
        let model = sample_model("رياضة");
        store.save(&model, false).unwrap();
        let loaded = store.load("رياضة").unwrap();
        assert_eq!(loaded, model);
    }

    #[test]
    fn duplicate_label_conflicts_without_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::open(dir.path()).unwrap();
        let model = sample_model("a");
        store.save(&model, false).unwrap();
        assert!(matches!(
            store.save(&model, false),
            Err(StoreError::LabelExists(_))
        ));
        store.save(&model, true).unwrap();
    }

    #[test]
    fn load_all_is_sorted_by_label() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::open(dir.path()).unwrap();
        for label in ["b", "a", "c"] {
            store.save(&sample_model(label), false).unwrap();
        }
        let labels: Vec<String> = store
            .load_all()
            .unwrap()
            .into_iter()
            .map(|m| m.class_label)
            .collect();
        assert_eq!(labels, vec!["a", "b", "c"]);
    }

    #[test]
    fn missing_label_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::open(dir.path()).unwrap();
        assert!(matches!(
            store.load("nope"),
            Err(StoreError::MissingLabel(_))
        ));
    }

    #[test]
    fn corrupt_record_reports_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::open(dir.path()).unwrap();
        std::fs::write(dir.path().join("bad.json"), b"{ not json").unwrap();
        assert!(matches!(store.load("bad"), Err(StoreError::Parse { .. })));
    }
}
