//! Arabic document indexing toolkit.
//!
//! Pipeline pieces, each usable on its own:
//! - [`normalize`]: raw UTF-8 text to a paginated, position-attributed
//!   stream of Arabic-letter tokens.
//! - [`ngram`]: rank-ordered N-gram profiles, Manhattan (rank-order)
//!   distance, Dice similarity, and profile-based classification.
//! - [`profile_store`]: on-disk store for trained class profiles.
//! - [`rooting`]: weight-rank root extraction.
//! - [`book_index`]: back-of-book index generation and rendering.
//! - [`inverted_index`]: document-level and positional inverted indexes
//!   with phrase queries and persistence.
//! - [`evaluation`]: precision/recall against gold reference indexes.
//! - [`corpus`]: class-per-directory corpus ingestion.

pub mod book_index;
pub mod corpus;
pub mod evaluation;
pub mod inverted_index;
pub mod ngram;
pub mod normalize;
pub mod profile_store;
pub mod rooting;

pub use normalize::{NormalizationConfig, NormalizedDocument, PaginationRule, RawDocument, Token};
