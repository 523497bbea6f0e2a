//! Model file layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes   "SPACTMDL"
//! version    u32       currently 1
//! header_len u32       byte length of the JSON header
//! header     JSON      kind, vocab_fingerprint, dimension, classes,
//!                      hyperparameters, training, modal_class
//! count      u64       number of f64 values that follow
//! values     f64 x count
//! ```
//!
//! The parameter block is empty for the baseline; for naive Bayes it holds the
//! six log priors, then log P(x=1|c) and log P(x=0|c) (class-major); for linear
//! models the class-major weights followed by the six biases.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    LinearParameters, ModelConfig, ModelKind, NbParameters, Parameters, TrainedModel,
    TrainingSummary,
};
use crate::corpus::{write_file, SpeechAct, NUM_CLASSES};
use crate::error::{Error, Result};

pub const MODEL_MAGIC: &[u8; 8] = b"SPACTMDL";
pub const MODEL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    kind: ModelKind,
    vocab_fingerprint: String,
    dimension: usize,
    classes: Vec<SpeechAct>,
    hyperparameters: ModelConfig,
    training: TrainingSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    modal_class: Option<SpeechAct>,
}

pub(crate) fn encode(model: &TrainedModel) -> Vec<u8> {
    let (values, modal_class): (Vec<f64>, _) = match &model.parameters {
        Parameters::Baseline { class } => (Vec::new(), Some(*class)),
        Parameters::NaiveBayes(p) => (
            p.log_prior
                .iter()
                .chain(&p.log_p1)
                .chain(&p.log_p0)
                .copied()
                .collect(),
            None,
        ),
        Parameters::Linear(p) => (p.weights.iter().chain(&p.bias).copied().collect(), None),
    };
    let header = Header {
        kind: model.kind(),
        vocab_fingerprint: model.vocab_fingerprint.clone(),
        dimension: model.dim,
        classes: SpeechAct::ALL.to_vec(),
        hyperparameters: model.config,
        training: model.summary.clone(),
        modal_class,
    };
    let json = serde_json::to_vec(&header).expect("header serializes");
    let mut out = Vec::with_capacity(24 + json.len() + 8 * values.len());
    out.extend_from_slice(MODEL_MAGIC);
    out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
    out.extend_from_slice(&(json.len() as u32).to_le_bytes());
    out.extend_from_slice(&json);
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(Error::Format(format!("model file truncated in {what}")));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

pub(crate) fn decode(bytes: &[u8]) -> Result<TrainedModel> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(8, "magic").ok() != Some(&MODEL_MAGIC[..]) {
        return Err(Error::Format("not a model file (bad magic)".into()));
    }
    let version = r.u32("version")?;
    if version != MODEL_VERSION {
        return Err(Error::Format(format!(
            "unsupported model version {version} (expected {MODEL_VERSION})"
        )));
    }
    let len = r.u32("header length")? as usize;
    let header: Header = serde_json::from_slice(r.take(len, "header")?)
        .map_err(|e| Error::Format(format!("bad model header: {e}")))?;
    if header.vocab_fingerprint.is_empty() {
        return Err(Error::Format("model header has no vocabulary fingerprint".into()));
    }
    if header.classes != SpeechAct::ALL {
        return Err(Error::Format("model class list differs from the six speech acts".into()));
    }
    if header.kind != header.hyperparameters.kind() {
        return Err(Error::Format("model kind disagrees with its hyperparameters".into()));
    }
    let count = r.u64("parameter count")? as usize;
    let d = header.dimension;
    let expected = match header.kind {
        ModelKind::Baseline => 0,
        ModelKind::NaiveBayes => NUM_CLASSES * (2 * d + 1),
        ModelKind::LogisticRegression | ModelKind::LinearSvm => NUM_CLASSES * (d + 1),
    };
    if count != expected {
        return Err(Error::Format(format!(
            "model declares {count} parameters, expected {expected}"
        )));
    }
    let block = r.take(count * 8, "parameters")?;
    if r.pos != bytes.len() {
        return Err(Error::Format("trailing bytes after model parameters".into()));
    }
    let values: Vec<f64> = block
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let lambda = |c: Option<f64>| c.unwrap_or(0.0);
    let parameters = match header.hyperparameters {
        ModelConfig::Baseline => Parameters::Baseline {
            class: header
                .modal_class
                .ok_or_else(|| Error::Format("baseline model without modal class".into()))?,
        },
        ModelConfig::NaiveBayes => {
            let prior: [f64; NUM_CLASSES] = values[..NUM_CLASSES].try_into().unwrap();
            let (p1, p0) = values[NUM_CLASSES..].split_at(NUM_CLASSES * d);
            Parameters::NaiveBayes(NbParameters::new(prior, p1.to_vec(), p0.to_vec()))
        }
        ModelConfig::LogisticRegression(c) => Parameters::Linear(linear(&values, d, lambda(c.lambda))),
        ModelConfig::LinearSvm(c) => Parameters::Linear(linear(&values, d, lambda(c.lambda))),
    };
    Ok(TrainedModel {
        config: header.hyperparameters,
        vocab_fingerprint: header.vocab_fingerprint,
        dim: d,
        parameters,
        summary: header.training,
    })
}

fn linear(values: &[f64], d: usize, lambda: f64) -> LinearParameters {
    let (w, b) = values.split_at(NUM_CLASSES * d);
    LinearParameters {
        weights: w.to_vec(),
        bias: b.try_into().unwrap(),
        lambda,
    }
}

pub fn save_model(model: &TrainedModel, path: &Path) -> Result<()> {
    if model.vocab_fingerprint.is_empty() {
        return Err(Error::InvalidArgument("model is not bound to a vocabulary".into()));
    }
    write_file(path, &encode(model))
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SpeechAct::*;
    use crate::features::SparseBinaryVector;
    use crate::models::{train, LrConfig, SvmConfig, TrainSet};

    fn data() -> (Vec<SparseBinaryVector>, Vec<SpeechAct>) {
        (0..30)
            .map(|i: u32| {
                let y = SpeechAct::ALL[(i % 6) as usize];
                let idx = vec![i % 6, 6 + i % 4, 10 + i % 3];
                (SparseBinaryVector::new(13, idx).unwrap(), y)
            })
            .unzip()
    }

    #[test]
    fn round_trip_every_kind() {
        let (x, y) = data();
        let set = TrainSet::new(&x, &y, 13).unwrap();
        for config in [
            ModelConfig::Baseline,
            ModelConfig::NaiveBayes,
            ModelConfig::LogisticRegression(LrConfig::default()),
            ModelConfig::LinearSvm(SvmConfig::default()),
        ] {
            let m = train(set, &config, "abc").unwrap();
            let bytes = encode(&m);
            let back = decode(&bytes).unwrap();
            assert_eq!(encode(&back), bytes);
            for xi in &x {
                assert_eq!(back.scores(xi).unwrap(), m.scores(xi).unwrap());
            }
        }
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let (x, y) = data();
        let set = TrainSet::new(&x, &y, 13).unwrap();
        let m = train(set, &ModelConfig::NaiveBayes, "abc").unwrap();
        let bytes = encode(&m);
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(decode(&bad), Err(Error::Format(_))));
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        let mut v2 = bytes.clone();
        v2[8] = 2;
        assert!(decode(&v2).is_err());
        let unbound = train(set, &ModelConfig::Baseline, "").unwrap();
        assert!(decode(&encode(&unbound)).is_err());
        assert_eq!(m.predict(&x[0]).unwrap(), Assertion);
    }
}
