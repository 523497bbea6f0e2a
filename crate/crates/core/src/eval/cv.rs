use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::folds::{kfold_split, Fold};
use super::metrics::{f1_scores, ClassScore, ConfusionMatrix, F1Scores};
use crate::corpus::{partition_by, Corpus, Granularity, SpeechAct, NUM_CLASSES};
use crate::error::{Error, Result};
use crate::features::{
    build_vocabulary_from, Analyzer, FeatureSubset, FeatureVocabulary, TweetAnalysis, VocabConfig,
    Vectorizer,
};
use crate::models::{train, ModelConfig, ModelKind, TrainSet};

/// Where n-gram and sub-tree selection sees data from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMode {
    /// Each fold selects from its own training split only.
    #[default]
    PerFold,
    /// One selection over the whole corpus, test tweets included.
    WholeCorpus,
}

impl SelectionMode {
    pub fn name(self) -> &'static str {
        match self {
            SelectionMode::PerFold => "per_fold",
            SelectionMode::WholeCorpus => "whole_corpus",
        }
    }
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "per_fold" | "fold" => Ok(SelectionMode::PerFold),
            "whole_corpus" | "whole" | "global" => Ok(SelectionMode::WholeCorpus),
            other => Err(Error::InvalidArgument(format!("unknown selection mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub k: usize,
    pub stratified: bool,
    pub seed: u64,
    pub model: ModelConfig,
    pub subset: FeatureSubset,
    pub selection: SelectionMode,
    pub vocab: VocabConfig,
    /// Upper bound on concurrently evaluated folds.
    pub jobs: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            k: 20,
            stratified: true,
            seed: 42,
            model: ModelConfig::default_for(ModelKind::LogisticRegression),
            subset: FeatureSubset::All,
            selection: SelectionMode::PerFold,
            vocab: VocabConfig::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldSummary {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub columns: usize,
    pub correct: u64,
    pub weighted_f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub key: String,
    pub size: usize,
    /// Absent when the partition was too small to evaluate.
    pub weighted_f1: Option<f64>,
}

/// Scores of one evaluated configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classifier: ModelKind,
    pub subset: FeatureSubset,
    pub selection: SelectionMode,
    pub granularity: Granularity,
    pub k: usize,
    pub stratified: bool,
    pub seed: u64,
    pub scores: F1Scores,
    /// Pooled over every evaluated fold and partition.
    pub confusion: ConfusionMatrix,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub folds: Vec<FoldSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub partitions: Vec<PartitionSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn weighted_f1(&self) -> f64 {
        self.scores.weighted_f1
    }
}

struct FoldOutcome {
    summary: FoldSummary,
    confusion: ConfusionMatrix,
}

/// Vocabulary for one training split, as built inside cross-validation.
pub fn fold_vocabulary(
    corpus: &Corpus,
    analyses: &[TweetAnalysis],
    labels: &[SpeechAct],
    train_indices: &[usize],
    analyzer: &Analyzer,
    config: &VocabConfig,
) -> Result<FeatureVocabulary> {
    build_vocabulary_from(
        train_indices.iter().map(|&i| (&analyses[i], labels[i])),
        config,
        analyzer,
        corpus.select(train_indices).fingerprint(),
    )
}

/// Inputs shared by every fold of one cross-validation run.
struct FoldContext<'a> {
    corpus: &'a Corpus,
    analyses: &'a [TweetAnalysis],
    labels: &'a [SpeechAct],
    analyzer: &'a Analyzer,
    config: &'a EvalConfig,
    shared: Option<&'a FeatureVocabulary>,
}

fn run_fold(index: usize, fold: &Fold, ctx: &FoldContext<'_>) -> Result<FoldOutcome> {
    let FoldContext {
        corpus,
        analyses,
        labels,
        analyzer,
        config,
        shared,
    } = *ctx;
    let vocab = match shared {
        Some(v) => v.clone(),
        None => fold_vocabulary(corpus, analyses, labels, &fold.train, analyzer, &config.vocab)?
            .restrict(config.subset)?,
    };
    let vectorizer = Vectorizer::new(&vocab);
    let train_x: Vec<_> = fold.train.iter().map(|&i| vectorizer.vectorize(&analyses[i])).collect();
    let train_y: Vec<_> = fold.train.iter().map(|&i| labels[i]).collect();
    let model = train(
        TrainSet::new(&train_x, &train_y, vocab.len())?,
        &config.model,
        vocab.fingerprint(),
    )?;
    let mut confusion = ConfusionMatrix::new();
    for &i in &fold.test {
        let predicted = model.predict(&vectorizer.vectorize(&analyses[i]))?;
        confusion.add(labels[i], predicted);
    }
    Ok(FoldOutcome {
        summary: FoldSummary {
            fold: index,
            train_size: fold.train.len(),
            test_size: fold.test.len(),
            columns: vocab.len(),
            correct: confusion.correct(),
            weighted_f1: f1_scores(&confusion).weighted_f1,
        },
        confusion,
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))
}

/// k-fold cross-validation with one confusion matrix pooled across folds.
pub fn cross_validate(corpus: &Corpus, analyzer: &Analyzer, config: &EvalConfig) -> Result<EvalReport> {
    let labels = corpus.labels()?;
    let folds = kfold_split(&labels, config.k, config.stratified, config.seed)?;
    let pool = pool(config.jobs)?;
    let analyses: Vec<TweetAnalysis> =
        pool.install(|| corpus.tweets.par_iter().map(|t| analyzer.analyze(t)).collect());
    let shared = match config.selection {
        SelectionMode::PerFold => None,
        SelectionMode::WholeCorpus => Some(
            build_vocabulary_from(
                analyses.iter().zip(labels.iter().copied()),
                &config.vocab,
                analyzer,
                corpus.fingerprint(),
            )?
            .restrict(config.subset)?,
        ),
    };
    let ctx = FoldContext {
        corpus,
        analyses: &analyses,
        labels: &labels,
        analyzer,
        config,
        shared: shared.as_ref(),
    };
    let outcomes: Vec<FoldOutcome> = pool.install(|| {
        folds
            .par_iter()
            .enumerate()
            .map(|(i, fold)| run_fold(i, fold, &ctx))
            .collect::<Result<_>>()
    })?;
    let mut confusion = ConfusionMatrix::new();
    let mut summaries = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        confusion.merge(&outcome.confusion);
        summaries.push(outcome.summary);
    }
    debug_assert_eq!(confusion.total() as usize, corpus.len());
    Ok(EvalReport {
        classifier: config.model.kind(),
        subset: config.subset,
        selection: config.selection,
        granularity: Granularity::TwitterWide,
        k: config.k,
        stratified: config.stratified,
        seed: config.seed,
        scores: f1_scores(&confusion),
        confusion,
        folds: summaries,
        partitions: Vec::new(),
        warnings: Vec::new(),
    })
}

/// Support-weighted combination of per-partition class scores.
pub fn aggregate_scores(parts: &[F1Scores]) -> F1Scores {
    let mut per_class = [ClassScore::default(); NUM_CLASSES];
    for (c, out) in per_class.iter_mut().enumerate() {
        let support: u64 = parts.iter().map(|p| p.per_class[c].support).sum();
        let mean = |f: fn(&ClassScore) -> f64| {
            if support == 0 {
                0.0
            } else {
                parts
                    .iter()
                    .map(|p| p.per_class[c].support as f64 * f(&p.per_class[c]))
                    .sum::<f64>()
                    / support as f64
            }
        };
        *out = ClassScore {
            precision: mean(|s| s.precision),
            recall: mean(|s| s.recall),
            f1: mean(|s| s.f1),
            support,
        };
    }
    F1Scores::from_classes(per_class)
}

/// Cross-validates separately inside every partition of `granularity` and
/// aggregates. Partitions with fewer than k tweets are skipped with a warning.
pub fn evaluate_granularity(
    corpus: &Corpus,
    analyzer: &Analyzer,
    config: &EvalConfig,
    granularity: Granularity,
) -> Result<EvalReport> {
    if granularity == Granularity::TwitterWide {
        let mut report = cross_validate(corpus, analyzer, config)?;
        report.partitions = vec![PartitionSummary {
            key: "all".into(),
            size: corpus.len(),
            weighted_f1: Some(report.scores.weighted_f1),
        }];
        return Ok(report);
    }
    let mut partitions = Vec::new();
    let mut warnings = Vec::new();
    let mut parts = Vec::new();
    let mut confusion = ConfusionMatrix::new();
    let all = partition_by(corpus, granularity);
    for (key, part) in all {
        if part.len() < config.k {
            let msg = format!(
                "{} partition {key:?} has {} tweets, fewer than k={}; skipped",
                granularity.name(),
                part.len(),
                config.k
            );
            log::warn!("{msg}");
            warnings.push(msg);
            partitions.push(PartitionSummary {
                key,
                size: part.len(),
                weighted_f1: None,
            });
            continue;
        }
        let report = cross_validate(&part, analyzer, config)?;
        confusion.merge(&report.confusion);
        partitions.push(PartitionSummary {
            key,
            size: part.len(),
            weighted_f1: Some(report.scores.weighted_f1),
        });
        parts.push(report.scores);
    }
    if parts.is_empty() {
        return Err(Error::AllPartitionsSkipped(config.k));
    }
    Ok(EvalReport {
        classifier: config.model.kind(),
        subset: config.subset,
        selection: config.selection,
        granularity,
        k: config.k,
        stratified: config.stratified,
        seed: config.seed,
        scores: aggregate_scores(&parts),
        confusion,
        folds: Vec::new(),
        partitions,
        warnings,
    })
}

/// One report per granularity, in the order given.
pub fn granularity_experiment(
    corpus: &Corpus,
    analyzer: &Analyzer,
    config: &EvalConfig,
    granularities: &[Granularity],
) -> Result<Vec<EvalReport>> {
    granularities
        .iter()
        .map(|&g| evaluate_granularity(corpus, analyzer, config, g))
        .collect()
}
