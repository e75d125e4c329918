//! Corpus conventions: a corpus root directory holds one subdirectory per
//! class label, each containing UTF-8 plain-text documents.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::normalize::{NormalizeError, RawDocument};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{0}: not a directory")]
    NotADirectory(String),
    #[error("{0}: corpus has no class subdirectories")]
    NoClasses(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// One class: its label (the subdirectory name) and its document files in
/// codepoint order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusClass {
    pub label: String,
    pub files: Vec<PathBuf>,
}

/// The discovered corpus structure plus non-fatal findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLayout {
    pub root_dir: PathBuf,
    /// Classes in label codepoint order.
    pub classes: Vec<CorpusClass>,
    pub warnings: Vec<String>,
}

impl CorpusLayout {
    pub fn doc_count(&self) -> usize {
        self.classes.iter().map(|c| c.files.len()).sum()
    }
}

/// Scans a corpus root. Each immediate subdirectory becomes a class; files
/// inside it become that class's documents. Empty class directories are
/// reported as warnings; a root with no class subdirectories is fatal.
pub fn ingest_corpus(root: &Path) -> Result<CorpusLayout, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::NotADirectory(root.display().to_string()));
    }
    let read_dir = |dir: &Path| -> Result<Vec<PathBuf>, CorpusError> {
        let entries = std::fs::read_dir(dir).map_err(|source| CorpusError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let mut paths = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|source| CorpusError::Io {
                path: dir.display().to_string(),
                source,
            })?;
            paths.push(entry.path());
        }
        paths.sort();
        Ok(paths)
    };

    let mut classes = Vec::new();
    let mut warnings = Vec::new();
    for path in read_dir(root)? {
        if !path.is_dir() {
            continue;
        }
        let Some(label) = path.file_name().and_then(|n| n.to_str()) else {
            warnings.push(format!("{}: non-UTF-8 directory name, skipped", path.display()));
            continue;
        };
        let files: Vec<PathBuf> = read_dir(&path)?
            .into_iter()
            .filter(|p| p.is_file())
            .collect();
        if files.is_empty() {
            warnings.push(format!("class {label:?} has no documents"));
        }
        classes.push(CorpusClass {
            label: label.to_string(),
            files,
        });
    }
    classes.sort_by(|a, b| a.label.cmp(&b.label));

    if classes.is_empty() {
        return Err(CorpusError::NoClasses(root.display().to_string()));
    }
    Ok(CorpusLayout {
        root_dir: root.to_path_buf(),
        classes,
        warnings,
    })
}

/// Loads a class's documents. Unreadable or non-UTF-8 files become per-file
/// errors so a batch run can continue. Document ids are
/// `<label>/<file name>`, unique within a corpus.
pub fn load_class_documents(
    class: &CorpusClass,
) -> (Vec<RawDocument>, Vec<(PathBuf, NormalizeError)>) {
    let mut docs = Vec::new();
    let mut errors = Vec::new();
    for path in &class.files {
        match RawDocument::from_file(path) {
            Ok(mut doc) => {
                doc.doc_id = format!("{}/{}", class.label, doc.doc_id);
                doc.category = Some(class.label.clone());
                docs.push(doc);
            }
            Err(e) => errors.push((path.clone(), e)),
        }
    }
    (docs, errors)
}
