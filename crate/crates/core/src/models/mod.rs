//! Multi-class classifiers over sparse binary vectors and their persistence.
//!
//! Every model produces six scores, one per class in code order, and predicts
//! their argmax with ties going to the lowest class code.

mod baseline;
mod io;
mod lr;
mod nb;
mod svm;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{SpeechAct, NUM_CLASSES};
use crate::error::{Error, Result};
use crate::features::{FeatureVocabulary, SparseBinaryVector};

pub use baseline::train_baseline;
pub use io::{load_model, save_model, MODEL_MAGIC, MODEL_VERSION};
pub use lr::{lr_objective, train_lr, train_lr_traced, LrConfig, LrTrace, StopReason};
pub use nb::{train_nb, NbParameters};
pub use svm::{train_svm, SvmConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Baseline,
    NaiveBayes,
    LogisticRegression,
    LinearSvm,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Baseline,
        ModelKind::NaiveBayes,
        ModelKind::LogisticRegression,
        ModelKind::LinearSvm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Baseline => "baseline",
            ModelKind::NaiveBayes => "naive_bayes",
            ModelKind::LogisticRegression => "logistic_regression",
            ModelKind::LinearSvm => "linear_svm",
        }
    }

    /// Short row label used in report tables.
    pub fn short(self) -> &'static str {
        match self {
            ModelKind::Baseline => "BL",
            ModelKind::NaiveBayes => "NB",
            ModelKind::LogisticRegression => "LR",
            ModelKind::LinearSvm => "SVM",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "baseline" | "bl" | "majority" => Ok(ModelKind::Baseline),
            "naive_bayes" | "nb" => Ok(ModelKind::NaiveBayes),
            "logistic_regression" | "lr" => Ok(ModelKind::LogisticRegression),
            "linear_svm" | "svm" => Ok(ModelKind::LinearSvm),
            other => Err(Error::InvalidArgument(format!("unknown classifier {other:?}"))),
        }
    }
}

/// Hyperparameters of any classifier kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelConfig {
    Baseline,
    NaiveBayes,
    LogisticRegression(LrConfig),
    LinearSvm(SvmConfig),
}

impl ModelConfig {
    pub fn default_for(kind: ModelKind) -> Self {
        match kind {
            ModelKind::Baseline => ModelConfig::Baseline,
            ModelKind::NaiveBayes => ModelConfig::NaiveBayes,
            ModelKind::LogisticRegression => ModelConfig::LogisticRegression(LrConfig::default()),
            ModelKind::LinearSvm => ModelConfig::LinearSvm(SvmConfig::default()),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            ModelConfig::Baseline => ModelKind::Baseline,
            ModelConfig::NaiveBayes => ModelKind::NaiveBayes,
            ModelConfig::LogisticRegression(_) => ModelKind::LogisticRegression,
            ModelConfig::LinearSvm(_) => ModelKind::LinearSvm,
        }
    }
}

/// Borrowed training data: vectors, their labels and the shared dimension.
#[derive(Debug, Clone, Copy)]
pub struct TrainSet<'a> {
    vectors: &'a [SparseBinaryVector],
    labels: &'a [SpeechAct],
    dim: usize,
}

impl<'a> TrainSet<'a> {
    pub fn new(vectors: &'a [SparseBinaryVector], labels: &'a [SpeechAct], dim: usize) -> Result<Self> {
        if vectors.len() != labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} vectors but {} labels",
                vectors.len(),
                labels.len()
            )));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidArgument("empty training set".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.dim(),
            });
        }
        Ok(TrainSet {
            vectors,
            labels,
            dim,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &'a [SparseBinaryVector] {
        self.vectors
    }

    pub fn labels(&self) -> &'a [SpeechAct] {
        self.labels
    }

    pub fn class_counts(&self) -> [usize; NUM_CLASSES] {
        let mut counts = [0; NUM_CLASSES];
        for l in self.labels {
            counts[l.code()] += 1;
        }
        counts
    }
}

/// Weights are class-major: row `c` holds the `dim` weights of class code `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearParameters {
    pub weights: Vec<f64>,
    pub bias: [f64; NUM_CLASSES],
    pub lambda: f64,
}

impl LinearParameters {
    pub fn zeros(dim: usize, lambda: f64) -> Self {
        LinearParameters {
            weights: vec![0.0; NUM_CLASSES * dim],
            bias: [0.0; NUM_CLASSES],
            lambda,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len() / NUM_CLASSES
    }

    pub fn row(&self, class: usize) -> &[f64] {
        let d = self.dim();
        &self.weights[class * d..(class + 1) * d]
    }

    pub fn margins(&self, x: &SparseBinaryVector) -> [f64; NUM_CLASSES] {
        let mut out = self.bias;
        for (c, o) in out.iter_mut().enumerate() {
            *o += x.dot(self.row(c));
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().chain(&self.bias).all(|w| w.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parameters {
    Baseline { class: SpeechAct },
    NaiveBayes(NbParameters),
    Linear(LinearParameters),
}

/// How training ended, recorded alongside the parameters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrainingSummary {
    pub examples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stop_reason: Option<StopReason>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_loss: Option<f64>,
}

/// A classifier bound to the vocabulary it was trained against.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub config: ModelConfig,
    pub vocab_fingerprint: String,
    pub dim: usize,
    pub parameters: Parameters,
    pub summary: TrainingSummary,
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        self.config.kind()
    }

    /// Refuses vocabularies other than the training one.
    pub fn check_vocabulary(&self, vocab: &FeatureVocabulary) -> Result<()> {
        if vocab.fingerprint() != self.vocab_fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: self.vocab_fingerprint.clone(),
                actual: vocab.fingerprint().to_string(),
            });
        }
        if vocab.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: vocab.len(),
            });
        }
        Ok(())
    }

    /// Per-class scores in code order. Naive Bayes and logistic regression
    /// return log-probabilities, the SVM margins, the baseline an indicator.
    pub fn scores(&self, x: &SparseBinaryVector) -> Result<[f64; NUM_CLASSES]> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.dim(),
            });
        }
        Ok(match &self.parameters {
            Parameters::Baseline { class } => {
                let mut s = [0.0; NUM_CLASSES];
                s[class.code()] = 1.0;
                s
            }
            Parameters::NaiveBayes(p) => p.log_posterior(x),
            Parameters::Linear(p) => match self.kind() {
                ModelKind::LogisticRegression => log_softmax(p.margins(x)),
                _ => p.margins(x),
            },
        })
    }

    pub fn predict(&self, x: &SparseBinaryVector) -> Result<SpeechAct> {
        Ok(argmax(&self.scores(x)?))
    }
}

/// Trains a model of the configured kind.
pub fn train(data: TrainSet<'_>, config: &ModelConfig, vocab_fingerprint: &str) -> Result<TrainedModel> {
    let mut model = match config {
        ModelConfig::Baseline => train_baseline(data),
        ModelConfig::NaiveBayes => train_nb(data),
        ModelConfig::LogisticRegression(c) => train_lr(data, c)?,
        ModelConfig::LinearSvm(c) => train_svm(data, c),
    };
    model.vocab_fingerprint = vocab_fingerprint.to_string();
    Ok(model)
}

/// Predicts after checking the vocabulary binding and the vector dimension.
pub fn predict(model: &TrainedModel, vocab: &FeatureVocabulary, x: &SparseBinaryVector) -> Result<SpeechAct> {
    model.check_vocabulary(vocab)?;
    model.predict(x)
}

pub fn predict_scores(
    model: &TrainedModel,
    vocab: &FeatureVocabulary,
    x: &SparseBinaryVector,
) -> Result<[f64; NUM_CLASSES]> {
    model.check_vocabulary(vocab)?;
    model.scores(x)
}

/// Index of the largest score as a class; the lowest code wins ties.
pub fn argmax(scores: &[f64; NUM_CLASSES]) -> SpeechAct {
    let mut best = 0;
    for c in 1..NUM_CLASSES {
        if scores[c] > scores[best] {
            best = c;
        }
    }
    SpeechAct::from_code(best).expect("code in range")
}

pub(crate) fn log_sum_exp(z: &[f64]) -> f64 {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + z.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

pub(crate) fn log_softmax(z: [f64; NUM_CLASSES]) -> [f64; NUM_CLASSES] {
    let lse = log_sum_exp(&z);
    z.map(|v| v - lse)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_lowest_code() {
        assert_eq!(argmax(&[0.0; 6]), SpeechAct::Assertion);
        assert_eq!(argmax(&[0.0, 2.0, 1.0, 2.0, 0.0, 0.0]), SpeechAct::Recommendation);
    }

    #[test]
    fn kind_aliases() {
        assert_eq!("LR".parse::<ModelKind>().unwrap(), ModelKind::LogisticRegression);
        assert_eq!("naive-bayes".parse::<ModelKind>().unwrap(), ModelKind::NaiveBayes);
        assert!("tree".parse::<ModelKind>().is_err());
    }
}
