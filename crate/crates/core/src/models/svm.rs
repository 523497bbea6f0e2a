use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LinearParameters, ModelConfig, Parameters, TrainSet, TrainedModel, TrainingSummary};
use crate::corpus::NUM_CLASSES;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    /// L2 strength; `None` resolves to 1 / |train|.
    pub lambda: Option<f64>,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            lambda: None,
            epochs: 20,
            seed: 42,
        }
    }
}

/// One binary Pegasos problem. The weight vector is `scale * v`; the last
/// entry of `v` is the bias, trained as a constant feature.
struct Pegasos {
    v: Vec<f64>,
    scale: f64,
    sq_norm: f64,
}

impl Pegasos {
    fn new(dim: usize) -> Self {
        Pegasos {
            v: vec![0.0; dim + 1],
            scale: 1.0,
            sq_norm: 0.0,
        }
    }

    fn margin(&self, x: &[u32]) -> f64 {
        let bias = self.v[self.v.len() - 1];
        self.scale * (x.iter().map(|&j| self.v[j as usize]).sum::<f64>() + bias)
    }

    fn step(&mut self, x: &[u32], y: f64, t: usize, lambda: f64) {
        let eta = 1.0 / (lambda * t as f64);
        let violated = y * self.margin(x) < 1.0;
        let shrink = 1.0 - eta * lambda;
        if shrink <= 0.0 {
            self.v.iter_mut().for_each(|w| *w = 0.0);
            self.scale = 1.0;
            self.sq_norm = 0.0;
        } else {
            self.scale *= shrink;
        }
        if violated {
            let a = eta * y / self.scale;
            let bias = self.v.len() - 1;
            let mut dot = self.v[bias];
            for &j in x {
                dot += self.v[j as usize];
            }
            for &j in x {
                self.v[j as usize] += a;
            }
            self.v[bias] += a;
            self.sq_norm += 2.0 * a * dot + a * a * (x.len() + 1) as f64;
        }
        // Project onto the ball of radius 1/sqrt(lambda).
        let norm = self.scale * self.sq_norm.max(0.0).sqrt();
        let radius = 1.0 / lambda.sqrt();
        if norm > radius {
            self.scale *= radius / norm;
        }
        if self.scale < 1e-9 {
            self.renormalize();
        }
    }

    fn renormalize(&mut self) {
        let s = self.scale;
        self.v.iter_mut().for_each(|w| *w *= s);
        self.scale = 1.0;
        self.sq_norm = self.v.iter().map(|w| w * w).sum();
    }

    fn weights(mut self) -> Vec<f64> {
        self.renormalize();
        self.v
    }
}

/// One-vs-rest linear SVM trained with Pegasos stochastic subgradient steps.
/// Each epoch visits every example once in a seeded random order.
pub fn train_svm(data: TrainSet<'_>, config: &SvmConfig) -> TrainedModel {
    let d = data.dim();
    let lambda = config.lambda.unwrap_or(1.0 / data.len() as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut solvers: Vec<Pegasos> = (0..NUM_CLASSES).map(|_| Pegasos::new(d)).collect();
    let mut t = 0;
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let x = data.vectors()[i].indices();
            let label = data.labels()[i].code();
            for (c, solver) in solvers.iter_mut().enumerate() {
                let y = if c == label { 1.0 } else { -1.0 };
                solver.step(x, y, t, lambda);
            }
        }
    }
    let mut params = LinearParameters::zeros(d, lambda);
    for (c, solver) in solvers.into_iter().enumerate() {
        let w = solver.weights();
        params.weights[c * d..(c + 1) * d].copy_from_slice(&w[..d]);
        params.bias[c] = w[d];
    }
    TrainedModel {
        config: ModelConfig::LinearSvm(SvmConfig {
            lambda: Some(lambda),
            ..*config
        }),
        vocab_fingerprint: String::new(),
        dim: d,
        parameters: Parameters::Linear(params),
        summary: TrainingSummary {
            examples: data.len(),
            iterations: Some(t),
            ..Default::default()
        },
    }
}
