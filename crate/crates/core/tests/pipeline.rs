//! Cross-validation behaviour on synthetic corpora.

use speechact::corpus::{load_corpus, partition_by, Granularity, TopicType, Tweet};
use speechact::eval::{
    cross_validate, evaluate_granularity, fold_vocabulary, kfold_split, EvalConfig, SelectionMode,
};
use speechact::features::{build_vocabulary, Analyzer, AnalyzerConfig, TweetAnalysis, VocabConfig};
use speechact::models::{ModelConfig, ModelKind};
use speechact::synth::{self, generate, SynthConfig};
use speechact::text::Lexicons;
use speechact::Corpus;

fn analyzer() -> Analyzer {
    Analyzer::new(Lexicons::bundled(), AnalyzerConfig::default())
}

fn config(kind: ModelKind) -> EvalConfig {
    EvalConfig {
        k: 10,
        model: ModelConfig::default_for(kind),
        vocab: VocabConfig {
            blocklist: synth::blocklist(),
            ..Default::default()
        },
        ..Default::default()
    }
}

fn small() -> Corpus {
    generate(&SynthConfig { size: 240, seed: 3, ..Default::default() }).unwrap()
}

#[test]
fn corpus_survives_a_save_and_load() {
    let corpus = small();
    let dir = tempfile::tempdir().unwrap();
    synth::write_synth(&corpus, dir.path()).unwrap();
    let loaded = load_corpus(
        &dir.path().join(synth::CORPUS_FILE),
        Some(&dir.path().join(synth::PARSES_FILE)),
    )
    .unwrap();
    assert_eq!(loaded.fingerprint(), corpus.fingerprint());
    assert_eq!(loaded.to_jsonl(), corpus.to_jsonl());
}

#[test]
fn fold_vocabulary_sees_only_training_tweets() {
    let corpus = small();
    let analyzer = analyzer();
    let cfg = config(ModelKind::LogisticRegression);
    let labels = corpus.labels().unwrap();
    let analyses: Vec<TweetAnalysis> = corpus.iter().map(|t| analyzer.analyze(t)).collect();
    for fold in kfold_split(&labels, 10, true, 42).unwrap().iter().take(3) {
        let from_fold = fold_vocabulary(&corpus, &analyses, &labels, &fold.train, &analyzer, &cfg.vocab).unwrap();
        let direct = build_vocabulary(&corpus.select(&fold.train), &cfg.vocab, &analyzer).unwrap();
        assert_eq!(from_fold.to_text(), direct.to_text());
    }
}

#[test]
fn pooled_confusion_counts_every_tweet_once() {
    let corpus = small();
    for kind in ModelKind::ALL {
        let report = cross_validate(&corpus, &analyzer(), &config(kind)).unwrap();
        assert_eq!(report.confusion.total() as usize, corpus.len(), "{kind:?}");
        assert_eq!(report.folds.len(), 10);
        let tested: usize = report.folds.iter().map(|f| f.test_size).sum();
        assert_eq!(tested, corpus.len());
    }
}

#[test]
fn whole_corpus_selection_runs_and_is_at_least_as_optimistic() {
    let corpus = small();
    let per_fold = cross_validate(&corpus, &analyzer(), &config(ModelKind::NaiveBayes)).unwrap();
    let whole = cross_validate(
        &corpus,
        &analyzer(),
        &EvalConfig {
            selection: SelectionMode::WholeCorpus,
            ..config(ModelKind::NaiveBayes)
        },
    )
    .unwrap();
    assert_eq!(whole.selection, SelectionMode::WholeCorpus);
    assert!(whole.weighted_f1() + 0.05 >= per_fold.weighted_f1());
}

#[test]
fn worker_count_does_not_change_results() {
    let corpus = small();
    let one = cross_validate(&corpus, &analyzer(), &config(ModelKind::LinearSvm)).unwrap();
    let three = cross_validate(&corpus, &analyzer(), &EvalConfig { jobs: 3, ..config(ModelKind::LinearSvm) }).unwrap();
    assert_eq!(one, three);
}

#[test]
fn a_single_topic_makes_every_granularity_agree() {
    let tweets: Vec<Tweet> = small()
        .iter()
        .cloned()
        .map(|mut t| {
            t.topic = "only".into();
            t.topic_type = TopicType::Event;
            t
        })
        .collect();
    let corpus = Corpus::new(tweets).unwrap();
    let cfg = config(ModelKind::NaiveBayes);
    let scores: Vec<f64> = Granularity::ALL
        .iter()
        .map(|&g| evaluate_granularity(&corpus, &analyzer(), &cfg, g).unwrap().weighted_f1())
        .collect();
    assert!(scores.windows(2).all(|w| (w[0] - w[1]).abs() < 1e-12), "{scores:?}");
}

#[test]
fn small_partitions_are_skipped_with_a_warning() {
    let corpus = small();
    let mut tweets: Vec<Tweet> = corpus.iter().cloned().collect();
    for t in tweets.iter_mut().take(5) {
        t.topic = "tiny".into();
    }
    let corpus = Corpus::new(tweets).unwrap();
    let report = evaluate_granularity(&corpus, &analyzer(), &config(ModelKind::NaiveBayes), Granularity::ByTopic).unwrap();
    assert_eq!(report.warnings.len(), 1);
    let tiny = report.partitions.iter().find(|p| p.key == "tiny").unwrap();
    assert_eq!((tiny.size, tiny.weighted_f1), (5, None));
    let evaluated: usize = partition_by(&corpus, Granularity::ByTopic)
        .iter()
        .filter(|(k, _)| k != "tiny")
        .map(|(_, p)| p.len())
        .sum();
    assert_eq!(report.confusion.total() as usize, evaluated);
}
