//! Shared fixtures for the benchmarks under `benches/`.

use speechact::features::{build_vocabulary, Analyzer, AnalyzerConfig, FeatureVocabulary, SparseBinaryVector, TweetAnalysis, Vectorizer};
use speechact::synth::{self, generate, SynthConfig};
use speechact::text::Lexicons;
use speechact::{Corpus, SpeechAct};

pub struct Fixture {
    pub corpus: Corpus,
    pub analyzer: Analyzer,
    pub analyses: Vec<TweetAnalysis>,
    pub vocab: FeatureVocabulary,
    pub vectors: Vec<SparseBinaryVector>,
    pub labels: Vec<SpeechAct>,
}

/// A synthetic corpus of `size` tweets, analyzed and vectorized.
pub fn fixture(size: usize) -> Fixture {
    let corpus = generate(&SynthConfig { size, ..Default::default() }).expect("synthetic corpus");
    let analyzer = Analyzer::new(Lexicons::bundled(), AnalyzerConfig::default());
    let config = speechact::features::VocabConfig {
        blocklist: synth::blocklist(),
        ..Default::default()
    };
    let vocab = build_vocabulary(&corpus, &config, &analyzer).expect("vocabulary");
    let analyses: Vec<TweetAnalysis> = corpus.iter().map(|t| analyzer.analyze(t)).collect();
    let vectorizer = Vectorizer::new(&vocab);
    let vectors = analyses.iter().map(|a| vectorizer.vectorize(a)).collect();
    let labels = corpus.labels().expect("labeled corpus");
    Fixture {
        corpus,
        analyzer,
        analyses,
        vocab,
        vectors,
        labels,
    }
}
