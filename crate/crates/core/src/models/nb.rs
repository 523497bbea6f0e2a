use super::{log_sum_exp, ModelConfig, Parameters, TrainSet, TrainedModel, TrainingSummary};
use crate::corpus::NUM_CLASSES;
use crate::features::SparseBinaryVector;

/// Bernoulli naive Bayes parameters. Probability rows are class-major.
#[derive(Debug, Clone, PartialEq)]
pub struct NbParameters {
    pub log_prior: [f64; NUM_CLASSES],
    /// log P(feature = 1 | class)
    pub log_p1: Vec<f64>,
    /// log P(feature = 0 | class)
    pub log_p0: Vec<f64>,
    /// log prior plus the sum of `log_p0` over all features, per class.
    base: [f64; NUM_CLASSES],
}

impl NbParameters {
    pub fn new(log_prior: [f64; NUM_CLASSES], log_p1: Vec<f64>, log_p0: Vec<f64>) -> Self {
        let dim = log_p1.len() / NUM_CLASSES;
        let mut base = log_prior;
        for (c, b) in base.iter_mut().enumerate() {
            *b += log_p0[c * dim..(c + 1) * dim].iter().sum::<f64>();
        }
        NbParameters {
            log_prior,
            log_p1,
            log_p0,
            base,
        }
    }

    pub fn dim(&self) -> usize {
        self.log_p1.len() / NUM_CLASSES
    }

    /// Unnormalized log joint log P(c) + sum_j log P(x_j | c).
    pub fn log_joint(&self, x: &SparseBinaryVector) -> [f64; NUM_CLASSES] {
        let d = self.dim();
        let mut out = self.base;
        for (c, o) in out.iter_mut().enumerate() {
            for &j in x.indices() {
                let k = c * d + j as usize;
                *o += self.log_p1[k] - self.log_p0[k];
            }
        }
        out
    }

    pub fn log_posterior(&self, x: &SparseBinaryVector) -> [f64; NUM_CLASSES] {
        let joint = self.log_joint(x);
        let lse = log_sum_exp(&joint);
        joint.map(|v| v - lse)
    }
}

/// Laplace smoothing (alpha = 1) on feature likelihoods and add-one on priors,
/// over all six classes whether or not they occur.
pub fn train_nb(data: TrainSet<'_>) -> TrainedModel {
    let d = data.dim();
    let n = data.len() as f64;
    let class_counts = data.class_counts();
    let mut on = vec![0u32; NUM_CLASSES * d];
    for (x, y) in data.vectors().iter().zip(data.labels()) {
        let row = y.code() * d;
        for &j in x.indices() {
            on[row + j as usize] += 1;
        }
    }
    let mut log_prior = [0.0; NUM_CLASSES];
    let mut log_p1 = vec![0.0; NUM_CLASSES * d];
    let mut log_p0 = vec![0.0; NUM_CLASSES * d];
    for c in 0..NUM_CLASSES {
        let nc = class_counts[c] as f64;
        log_prior[c] = ((nc + 1.0) / (n + NUM_CLASSES as f64)).ln();
        let denom = nc + 2.0;
        for j in 0..d {
            let k = c * d + j;
            let count = on[k] as f64;
            log_p1[k] = ((count + 1.0) / denom).ln();
            log_p0[k] = ((nc - count + 1.0) / denom).ln();
        }
    }
    TrainedModel {
        config: ModelConfig::NaiveBayes,
        vocab_fingerprint: String::new(),
        dim: d,
        parameters: Parameters::NaiveBayes(NbParameters::new(log_prior, log_p1, log_p0)),
        summary: TrainingSummary {
            examples: data.len(),
            ..Default::default()
        },
    }
}
