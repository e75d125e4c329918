//! The profile, train, and classify subcommands.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use arindex::corpus::{ingest_corpus, load_class_documents, CorpusClass};
use arindex::ngram::{build_profile, classify_profile, train_class, Metric, NGramProfile};
use arindex::profile_store::ProfileStore;

use crate::commands::{emit, load_normalized, normalize_batch, to_pretty_json, OutputFormat};
use crate::config::{resolve, FileConfig, NormFlags, ProfileFlags, Settings};
use crate::error::CliError;

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Input UTF-8 text file
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    #[command(flatten)]
    pub profile: ProfileFlags,
    #[command(flatten)]
    pub norm: NormFlags,
}

#[derive(Serialize)]
struct ProfileOutput<'a> {
    source_id: &'a str,
    n: usize,
    entries: &'a [(String, u64)],
}

fn render_profile_text(profile: &NGramProfile) -> String {
    let mut out = String::new();
    for (rank, (gram, freq)) in profile.entries().iter().enumerate() {
        out.push_str(&format!("{rank}\t{gram}\t{freq}\n"));
    }
    out
}

pub fn run_profile(args: &ProfileArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &args.profile)?;
    let doc = load_normalized(
        &args.input,
        &settings.normalization,
        settings.words_per_page,
        None,
    )?;
    let profile = build_profile(&doc, &settings.profile)?;
    let content = match args.format {
        OutputFormat::Text => render_profile_text(&profile),
        OutputFormat::Machine => to_pretty_json(&ProfileOutput {
            source_id: profile.source_id(),
            n: profile.n(),
            entries: profile.entries(),
        }),
    };
    emit(args.out.as_deref(), &content)
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Class label for --dir mode
    #[arg(long, requires = "dir", conflicts_with = "corpus")]
    pub class: Option<String>,
    /// Directory of training documents for one class
    #[arg(long, value_name = "DIR", requires = "class")]
    pub dir: Option<PathBuf>,
    /// Corpus root: one subdirectory per class
    #[arg(long, value_name = "DIR")]
    pub corpus: Option<PathBuf>,
    /// Profile store directory
    #[arg(long, value_name = "DIR")]
    pub store: Option<PathBuf>,
    /// Replace an existing class profile instead of failing
    #[arg(long)]
    pub overwrite: bool,
    #[command(flatten)]
    pub profile: ProfileFlags,
    #[command(flatten)]
    pub norm: NormFlags,
}

fn train_one_class(
    class: &CorpusClass,
    store: &ProfileStore,
    settings: &Settings,
    overwrite: bool,
) -> Result<usize, CliError> {
    let (raws, errors) = load_class_documents(class);
    for (path, err) in &errors {
        eprintln!("warning: skipping {}: {err}", path.display());
    }
    if raws.is_empty() {
        eprintln!("warning: class {:?} has no usable documents", class.label);
        return Ok(0);
    }
    let docs = normalize_batch(&raws, &settings.normalization, settings.words_per_page)?;
    let model = train_class(&docs, &class.label, &settings.profile)?;
    store.save(&model, overwrite)?;
    Ok(docs.len())
}

pub fn run_train(args: &TrainArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &args.profile)?;
    let store_dir = args
        .store
        .clone()
        .or_else(|| settings.profile_store.clone())
        .ok_or_else(|| CliError::Config("no profile store given (--store or config)".into()))?;
    let store = ProfileStore::open(store_dir)?;

    match (&args.class, &args.dir, &args.corpus) {
        (Some(label), Some(dir), None) => {
            let files = sorted_files(dir)?;
            let class = CorpusClass {
                label: label.clone(),
                files,
            };
            let trained = train_one_class(&class, &store, &settings, args.overwrite)?;
            if trained == 0 {
                return Err(CliError::Empty(format!(
                    "class {label:?} has no usable documents"
                )));
            }
            eprintln!("trained class {label:?} on {trained} documents");
            Ok(())
        }
        (None, None, Some(corpus_root)) => {
            let layout = ingest_corpus(corpus_root)?;
            for warning in &layout.warnings {
                eprintln!("warning: {warning}");
            }
            let mut trained_classes = 0;
            for class in &layout.classes {
                let trained = train_one_class(class, &store, &settings, args.overwrite)?;
                if trained > 0 {
                    eprintln!("trained class {:?} on {trained} documents", class.label);
                    trained_classes += 1;
                }
            }
            if trained_classes == 0 {
                return Err(CliError::Empty("no class could be trained".into()));
            }
            Ok(())
        }
        _ => Err(CliError::Config(
            "pass either --class LABEL --dir DIR or --corpus DIR".into(),
        )),
    }
}

fn sorted_files(dir: &std::path::Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MetricArg {
    Manhattan,
    Dice,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Input UTF-8 text file
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Profile store directory
    #[arg(long, value_name = "DIR")]
    pub store: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "manhattan")]
    pub metric: MetricArg,
    /// Manhattan missing-gram penalty (default: document profile length)
    #[arg(long)]
    pub penalty: Option<u64>,
    /// Output file (default: standard output)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    #[command(flatten)]
    pub profile: ProfileFlags,
    #[command(flatten)]
    pub norm: NormFlags,
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    chosen_class: &'a str,
    metric: &'a str,
    scores: &'a [(String, f64)],
}

pub fn run_classify(args: &ClassifyArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let settings = resolve(file_config, &args.norm, &args.profile)?;
    let store_dir = args
        .store
        .clone()
        .or_else(|| settings.profile_store.clone())
        .ok_or_else(|| CliError::Config("no profile store given (--store or config)".into()))?;
    let models = ProfileStore::open(store_dir)?.load_all()?;
    for model in &models {
        if model.profile.n() != settings.profile.n {
            return Err(CliError::Config(format!(
                "class {:?} was trained with n = {} but this run uses n = {}",
                model.class_label,
                model.profile.n(),
                settings.profile.n
            )));
        }
    }

    let doc = load_normalized(
        &args.input,
        &settings.normalization,
        settings.words_per_page,
        None,
    )?;
    let profile = build_profile(&doc, &settings.profile)?;
    let metric = match args.metric {
        MetricArg::Manhattan => Metric::Manhattan,
        MetricArg::Dice => Metric::Dice,
    };
    let result = classify_profile(&profile, &models, metric, args.penalty)?;

    let content = match args.format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (label, score) in &result.scores {
                out.push_str(&format!("{label}\t{score}\n"));
            }
            out
        }
        OutputFormat::Machine => to_pretty_json(&ClassifyOutput {
            chosen_class: &result.chosen_class,
            metric: result.metric.as_str(),
            scores: &result.scores,
        }),
    };
    emit(args.out.as_deref(), &content)
}
