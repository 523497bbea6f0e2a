//! Speech-act classification for short social-media texts.
//!
//! The pipeline runs corpus ingestion ([`corpus`]), tokenization and lexicon
//! matching ([`text`]), binary feature extraction and selection
//! ([`features`]), classifiers ([`models`]) and cross-validated evaluation
//! ([`eval`]). [`synth`] generates labeled stand-in corpora with parses.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod models;
pub mod synth;
pub mod text;

pub use corpus::{Corpus, DependencyParse, Granularity, ParseToken, SpeechAct, TopicType, Tweet};
pub use error::{Error, Result};
