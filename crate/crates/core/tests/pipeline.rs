//! Cross-module pipeline checks on real Arabic text: normalize, index,
//! render, export, evaluate, and classify against a persisted store.

use arindex::book_index::{
    build_book_index, render_index, strip_appended_index, BookIndexExport, RankingBand,
};
use arindex::evaluation::{compare_index, EvalMode, GoldIndex};
use arindex::inverted_index::{IndexVariant, InvertedIndex};
use arindex::ngram::{classify, train_class, Metric, ProfileConfig};
use arindex::normalize::{
    normalize_document, NormalizationConfig, PaginationRule, RawDocument,
};
use arindex::profile_store::ProfileStore;

const PAGE_ONE: &str =
    "ذهبَ الصيادُ إلى البحرِ صباحاً، وحملَ الصيادُ شباكَهُ الكبيرةَ! \
     البحرُ هادئٌ والسماءُ صافيةٌ 100%.";
const PAGE_TWO: &str =
    "عادَ الصيادُ من البحرِ مساءً؛ وفي يدهِ سمكٌ كثيرٌ. الصيادُ سعيدٌ بالسمكِ.";

fn sample_raw() -> RawDocument {
    RawDocument::new("fisher.txt", format!("{PAGE_ONE}\u{000C}{PAGE_TWO}"))
}

#[test]
fn normalize_then_index_then_render_round_trips() {
    let raw = sample_raw();
    let config = NormalizationConfig::default();
    let doc = normalize_document(&raw, &config, &PaginationRule::FormFeeds).unwrap();

    assert_eq!(doc.page_count, 2);
    // Stop words (إلى, من, وفي) and all diacritics are gone.
    assert!(doc.surfaces().all(|s| s != "إلى" && s != "من"));
    assert!(doc
        .surfaces()
        .all(|s| s.chars().all(arindex::normalize::is_arabic_letter)));

    let band = RankingBand {
        high_cut: 0.0,
        low_min_freq: 1,
    };
    let index = build_book_index(&doc, &band, None).unwrap();
    // الصياد appears four times across both pages, البحر three times.
    let fisher = index.entries.iter().find(|e| e.term == "الصياد").unwrap();
    assert_eq!(fisher.pages, vec![1, 2]);
    let sea = index.entries.iter().find(|e| e.term == "البحر").unwrap();
    assert_eq!(sea.pages, vec![1, 2]);

    let rendered = render_index(&raw, &index).unwrap();
    assert_eq!(strip_appended_index(&rendered), raw.text);

    // Export, reload as gold, compare: a self-comparison is perfect.
    let export = BookIndexExport::from_index(&index, Some(band));
    let gold: GoldIndex = BookIndexExport::parse(&export.to_json()).unwrap().into();
    let report = compare_index(&index, &gold, EvalMode::PageLevel).unwrap();
    assert_eq!(report.precision, Some(1.0));
    assert_eq!(report.recall, Some(1.0));
}

#[test]
fn normalized_text_reingests_to_the_same_document() {
    let raw = sample_raw();
    let config = NormalizationConfig::default();
    let doc = normalize_document(&raw, &config, &PaginationRule::FormFeeds).unwrap();

    // Rebuild the text form relied on by the CLI: pages joined by form
    // feeds. Re-normalizing it must reproduce the token stream.
    let mut pages: Vec<Vec<&str>> = vec![Vec::new(); doc.page_count as usize];
    for token in &doc.tokens {
        pages[(token.page - 1) as usize].push(token.surface.as_str());
    }
    let text = pages
        .iter()
        .map(|p| p.join(" "))
        .collect::<Vec<_>>()
        .join("\u{000C}");
    let again = normalize_document(
        &RawDocument::new("fisher.txt", text),
        &config,
        &PaginationRule::FormFeeds,
    )
    .unwrap();
    assert_eq!(again, doc);
}

#[test]
fn inverted_index_over_pipeline_documents() {
    let config = NormalizationConfig::default();
    let mut index = InvertedIndex::new(IndexVariant::Positional);
    let texts = [
        ("a.txt", "البحر واسع والسمك كثير في البحر"),
        ("b.txt", "الجبل عال والثلج كثير فوق الجبل"),
    ];
    let mut docs = Vec::new();
    for (name, text) in texts {
        let doc = normalize_document(
            &RawDocument::new(name, text),
            &config,
            &PaginationRule::WordsPerPage(300),
        )
        .unwrap();
        index.add_document(&doc).unwrap();
        docs.push(doc);
    }

    let postings = index.query_term("كثير");
    assert_eq!(postings.len(), 2);
    // Phrase lookup respects normalized ordinals (stop words removed).
    let hits = index
        .query_phrase(&["والثلج".to_string(), "كثير".to_string()])
        .unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].doc_id, "b.txt");
}

#[test]
fn store_backed_classification() {
    let dir = tempfile::tempdir().unwrap();
    let store = ProfileStore::open(dir.path()).unwrap();
    let config = ProfileConfig::with_n(3);
    let norm = NormalizationConfig::default();
    let rule = PaginationRule::WordsPerPage(300);

    let train_texts = [
        ("بحار", "البحر والسفينة والميناء والشراع تظهر في نصوص البحارة دائما"),
        ("جبال", "الجبل والقمة والصخرة والوادي تظهر في نصوص المتسلقين دائما"),
    ];
    for (label, text) in train_texts {
        let doc =
            normalize_document(&RawDocument::new("t", text), &norm, &rule).unwrap();
        let model = train_class(&[doc], label, &config).unwrap();
        store.save(&model, false).unwrap();
    }

    let models = store.load_all().unwrap();
    assert_eq!(models.len(), 2);
    let probe = normalize_document(
        &RawDocument::new("probe", "ركب الصياد السفينة وغادر الميناء نحو البحر"),
        &norm,
        &rule,
    )
    .unwrap();
    for metric in [Metric::Manhattan, Metric::Dice] {
        let result = classify(&probe, &models, metric, &config).unwrap();
        assert_eq!(result.chosen_class, "بحار", "metric {metric:?}");
        assert_eq!(result.scores.len(), 2);
    }
}
