use serde::{Deserialize, Serialize};

use crate::corpus::{SpeechAct, NUM_CLASSES};

/// Rows are true classes, columns predicted, both in code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; NUM_CLASSES]; NUM_CLASSES],
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a SpeechAct, &'a SpeechAct)>) -> Self {
        let mut cm = Self::new();
        for (t, p) in pairs {
            cm.add(*t, *p);
        }
        cm
    }

    pub fn add(&mut self, truth: SpeechAct, predicted: SpeechAct) {
        self.counts[truth.code()][predicted.code()] += 1;
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for (row, orow) in self.counts.iter_mut().zip(&other.counts) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn support(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn predicted(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }

    pub fn correct(&self) -> u64 {
        (0..NUM_CLASSES).map(|c| self.counts[c][c]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// Per-class scores in code order plus their support-weighted F1 average.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct F1Scores {
    pub per_class: [ClassScore; NUM_CLASSES],
    pub weighted_f1: f64,
}

impl F1Scores {
    pub fn get(&self, class: SpeechAct) -> &ClassScore {
        &self.per_class[class.code()]
    }

    /// Recomputes the weighted average from the per-class entries.
    pub fn from_classes(per_class: [ClassScore; NUM_CLASSES]) -> Self {
        let total: u64 = per_class.iter().map(|c| c.support).sum();
        let weighted_f1 = if total == 0 {
            0.0
        } else {
            per_class.iter().map(|c| c.support as f64 * c.f1).sum::<f64>() / total as f64
        };
        F1Scores {
            per_class,
            weighted_f1,
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// F1 = 2PR/(P+R), defined as 0 when P + R = 0.
pub fn f1_scores(cm: &ConfusionMatrix) -> F1Scores {
    let mut per_class = [ClassScore::default(); NUM_CLASSES];
    for (c, score) in per_class.iter_mut().enumerate() {
        let tp = cm.counts[c][c];
        let precision = ratio(tp, cm.predicted(c));
        let recall = ratio(tp, cm.support(c));
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        *score = ClassScore {
            precision,
            recall,
            f1,
            support: cm.support(c),
        };
    }
    F1Scores::from_classes(per_class)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_diagonal() {
        let mut cm = ConfusionMatrix::new();
        for c in SpeechAct::ALL {
            cm.add(c, c);
        }
        let s = f1_scores(&cm);
        assert!(s.per_class.iter().all(|c| c.f1 == 1.0));
        assert_eq!(s.weighted_f1, 1.0);
    }

    #[test]
    fn two_class_hand_values() {
        let mut cm = ConfusionMatrix::new();
        cm.counts[0][0] = 8;
        cm.counts[0][1] = 2;
        cm.counts[1][0] = 3;
        cm.counts[1][1] = 7;
        let s = f1_scores(&cm);
        let (p, r) = (8.0 / 11.0, 8.0 / 10.0);
        assert!((s.per_class[0].f1 - 2.0 * p * r / (p + r)).abs() < 1e-15);
        // Class 1: P = 7/9, R = 7/10.
        let (p, r) = (7.0 / 9.0, 7.0 / 10.0);
        assert!((s.per_class[1].f1 - 2.0 * p * r / (p + r)).abs() < 1e-15);
        // Absent classes score 0 and carry no weight.
        assert_eq!(s.per_class[4].f1, 0.0);
        assert_eq!(s.per_class[4].support, 0);
        let w = (s.per_class[0].f1 * 10.0 + s.per_class[1].f1 * 10.0) / 20.0;
        assert!((s.weighted_f1 - w).abs() < 1e-15);
    }
}
