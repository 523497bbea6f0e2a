use super::{ModelConfig, Parameters, TrainSet, TrainedModel, TrainingSummary};
use crate::corpus::SpeechAct;

/// Majority classifier: always predicts the modal training class.
pub fn train_baseline(data: TrainSet<'_>) -> TrainedModel {
    let counts = data.class_counts();
    let mut best = 0;
    for c in 1..counts.len() {
        if counts[c] > counts[best] {
            best = c;
        }
    }
    TrainedModel {
        config: ModelConfig::Baseline,
        vocab_fingerprint: String::new(),
        dim: data.dim(),
        parameters: Parameters::Baseline {
            class: SpeechAct::from_code(best).expect("code in range"),
        },
        summary: TrainingSummary {
            examples: data.len(),
            ..Default::default()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::SparseBinaryVector;
    use SpeechAct::*;

    fn model(labels: &[SpeechAct]) -> TrainedModel {
        let x = vec![SparseBinaryVector::new(2, vec![]).unwrap(); labels.len()];
        train_baseline(TrainSet::new(&x, labels, 2).unwrap())
    }

    #[test]
    fn predicts_mode() {
        let m = model(&[Expression, Expression, Question]);
        let x = SparseBinaryVector::new(2, vec![1]).unwrap();
        assert_eq!(m.predict(&x).unwrap(), Expression);
    }

    #[test]
    fn ties_go_to_lowest_code() {
        let m = model(&[Question, Assertion, Question, Assertion, Assertion, Question]);
        let x = SparseBinaryVector::new(2, vec![]).unwrap();
        assert_eq!(m.predict(&x).unwrap(), Assertion);
    }
}
