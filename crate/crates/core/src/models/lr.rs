use serde::{Deserialize, Serialize};

use super::{log_sum_exp, LinearParameters, ModelConfig, Parameters, TrainSet, TrainedModel, TrainingSummary};
use crate::corpus::NUM_CLASSES;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrConfig {
    /// L2 strength on the weights; `None` resolves to 1 / |train|.
    pub lambda: Option<f64>,
    /// Stop once the gradient's largest absolute entry falls below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for LrConfig {
    fn default() -> Self {
        LrConfig {
            lambda: None,
            tol: 1e-6,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxIterations,
    /// No step length satisfied the sufficient-decrease condition.
    LineSearchStalled,
}

/// Objective value after initialization and after every accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct LrTrace {
    pub losses: Vec<f64>,
    pub stop_reason: StopReason,
    pub iterations: usize,
    pub gradient_norm: f64,
}

const ARMIJO: f64 = 1e-4;
const SHRINK: f64 = 0.5;
const MIN_STEP: f64 = 1e-16;

/// Mean cross-entropy plus (lambda/2)||W||^2 and its gradient, laid out like
/// `params`: class-major weights followed by the six biases.
pub fn lr_objective(data: TrainSet<'_>, params: &LinearParameters) -> (f64, Vec<f64>) {
    let d = data.dim();
    let n = data.len() as f64;
    let mut grad = vec![0.0; NUM_CLASSES * d + NUM_CLASSES];
    let mut loss = 0.0;
    for (x, y) in data.vectors().iter().zip(data.labels()) {
        let z = params.margins(x);
        let lse = log_sum_exp(&z);
        loss += lse - z[y.code()];
        for c in 0..NUM_CLASSES {
            let mut r = (z[c] - lse).exp();
            if c == y.code() {
                r -= 1.0;
            }
            let r = r / n;
            for &j in x.indices() {
                grad[c * d + j as usize] += r;
            }
            grad[NUM_CLASSES * d + c] += r;
        }
    }
    loss /= n;
    let lambda = params.lambda;
    let mut sq = 0.0;
    for (g, w) in grad.iter_mut().zip(&params.weights) {
        *g += lambda * w;
        sq += w * w;
    }
    (loss + 0.5 * lambda * sq, grad)
}

fn loss_only(data: TrainSet<'_>, params: &LinearParameters) -> f64 {
    let n = data.len() as f64;
    let mut loss = 0.0;
    for (x, y) in data.vectors().iter().zip(data.labels()) {
        let z = params.margins(x);
        loss += log_sum_exp(&z) - z[y.code()];
    }
    let sq: f64 = params.weights.iter().map(|w| w * w).sum();
    loss / n + 0.5 * params.lambda * sq
}

fn stepped(params: &LinearParameters, grad: &[f64], t: f64) -> LinearParameters {
    let nw = params.weights.len();
    let mut next = params.clone();
    for (w, g) in next.weights.iter_mut().zip(&grad[..nw]) {
        *w -= t * g;
    }
    for (b, g) in next.bias.iter_mut().zip(&grad[nw..]) {
        *b -= t * g;
    }
    next
}

/// Softmax regression by full-batch gradient descent with backtracking line search.
pub fn train_lr(data: TrainSet<'_>, config: &LrConfig) -> Result<TrainedModel> {
    train_lr_traced(data, config).map(|(m, _)| m)
}

pub fn train_lr_traced(data: TrainSet<'_>, config: &LrConfig) -> Result<(TrainedModel, LrTrace)> {
    let lambda = config.lambda.unwrap_or(1.0 / data.len() as f64);
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be >= 0, got {lambda}")));
    }
    let mut params = LinearParameters::zeros(data.dim(), lambda);
    let (mut loss, mut grad) = lr_objective(data, &params);
    let mut losses = vec![loss];
    let mut step: f64 = 1.0;
    let mut iterations = 0;
    let inf_norm = |g: &[f64]| g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut gnorm = inf_norm(&grad);
    let stop_reason = loop {
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss(loss));
        }
        if gnorm < config.tol {
            break StopReason::Converged;
        }
        if iterations >= config.max_iter {
            break StopReason::MaxIterations;
        }
        let sq: f64 = grad.iter().map(|g| g * g).sum();
        // Start each search a little longer than the last accepted step.
        let mut t = (step * 2.0).min(1e6);
        let accepted = loop {
            let candidate = stepped(&params, &grad, t);
            let cand_loss = loss_only(data, &candidate);
            if cand_loss.is_finite() && cand_loss <= loss - ARMIJO * t * sq {
                break Some((candidate, cand_loss));
            }
            t *= SHRINK;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some((next, _)) = accepted else {
            break StopReason::LineSearchStalled;
        };
        step = t;
        params = next;
        (loss, grad) = lr_objective(data, &params);
        gnorm = inf_norm(&grad);
        losses.push(loss);
        iterations += 1;
    };
    if !params.is_finite() {
        return Err(Error::NonFiniteLoss(loss));
    }
    log::debug!("lr: {iterations} iterations, loss {loss:.6}, |g|inf {gnorm:.3e}, {stop_reason:?}");
    let resolved = LrConfig {
        lambda: Some(lambda),
        ..*config
    };
    let model = TrainedModel {
        config: ModelConfig::LogisticRegression(resolved),
        vocab_fingerprint: String::new(),
        dim: data.dim(),
        parameters: Parameters::Linear(params),
        summary: TrainingSummary {
            examples: data.len(),
            iterations: Some(iterations),
            stop_reason: Some(stop_reason),
            final_loss: Some(loss),
        },
    };
    Ok((
        model,
        LrTrace {
            losses,
            stop_reason,
            iterations,
            gradient_norm: gnorm,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SpeechAct::{self, *};
    use crate::features::SparseBinaryVector;

    fn separable() -> (Vec<SparseBinaryVector>, Vec<SpeechAct>) {
        // Feature 0 marks Question, feature 1 marks Request; feature 2 is noise.
        let rows: [(&[u32], SpeechAct); 6] = [
            (&[0], Question),
            (&[0, 2], Question),
            (&[0], Question),
            (&[1], Request),
            (&[1, 2], Request),
            (&[1], Request),
        ];
        rows.iter()
            .map(|(i, y)| (SparseBinaryVector::new(3, i.to_vec()).unwrap(), *y))
            .unzip()
    }

    #[test]
    fn separable_set_is_fit_exactly() {
        let (x, y) = separable();
        let data = TrainSet::new(&x, &y, 3).unwrap();
        let config = LrConfig {
            lambda: Some(0.1),
            ..Default::default()
        };
        let (m, trace) = train_lr_traced(data, &config).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(m.predict(xi).unwrap(), *yi);
        }
        assert!(trace.losses.windows(2).all(|w| w[1] <= w[0]));
        let s = m.scores(&x[0]).unwrap();
        assert!((s.iter().map(|v| v.exp()).sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn heavy_regularization_shrinks_weights() {
        let (x, y) = separable();
        let data = TrainSet::new(&x, &y, 3).unwrap();
        let config = LrConfig {
            lambda: Some(1e6),
            ..Default::default()
        };
        let m = train_lr(data, &config).unwrap();
        let Parameters::Linear(p) = &m.parameters else { unreachable!() };
        assert!(p.weights.iter().all(|w| w.abs() < 1e-5));
        // Predictions fall back to the biases, which follow the class priors.
        let p = m.predict(&x[3]).unwrap();
        assert!(p == Question || p == Request);
    }

    #[test]
    fn negative_lambda_rejected() {
        let (x, y) = separable();
        let data = TrainSet::new(&x, &y, 3).unwrap();
        let config = LrConfig {
            lambda: Some(-1.0),
            ..Default::default()
        };
        assert!(train_lr(data, &config).is_err());
    }
}
