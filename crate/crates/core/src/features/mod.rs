//! Binary feature extraction: lexicon flags, chi-squared selected n-grams and
//! dependency sub-trees, Twitter markers and POS indicators.

mod analysis;
mod select;
mod subtree;
mod vector;
mod vocab;

pub use analysis::{is_ngram_unit, tweet_ngrams, Analyzer, AnalyzerConfig, TweetAnalysis};
pub use select::{
    aggregate_chi2, chi2_score, select_features, Blocklist, Candidate, CandidateSet, ClassCounts,
    ScoredKey,
};
pub use subtree::{extract_subtrees, SubtreeKey, SubtreeShape};
pub use vector::{vectorize, SparseBinaryVector, Vectorizer};
pub use vocab::{
    build_ngram_candidates, build_subtree_candidates, build_vocabulary, build_vocabulary_from,
    FeatureGroup, FeatureId, FeatureSubset, FeatureVocabulary, VocabConfig, VocabHeader,
};
