//! Property tests over tokenization, partitions, folds and model scores.

use proptest::prelude::*;

use speechact::corpus::{partition_by, Granularity, NUM_CLASSES};
use speechact::eval::{kfold_split, ConfusionMatrix, f1_scores};
use speechact::models::argmax;
use speechact::synth::{generate, SynthConfig};
use speechact::text::tokenize;
use speechact::SpeechAct;

fn label() -> impl Strategy<Value = SpeechAct> {
    (0..NUM_CLASSES).prop_map(|c| SpeechAct::from_code(c).unwrap())
}

proptest! {
    #[test]
    fn tokens_are_ordered_pieces_of_the_text(text in "[a-zA-Z0-9 #@:;()!?.,'_/-]{0,60}") {
        let mut rest = text.as_str();
        for tok in tokenize(&text) {
            prop_assert!(!tok.surface.is_empty());
            prop_assert!(!tok.surface.contains(char::is_whitespace));
            prop_assert_eq!(&tok.normalized, &tok.surface.to_lowercase());
            let at = rest.find(tok.surface.as_str());
            prop_assert!(at.is_some(), "{:?} not found in {:?}", tok.surface, rest);
            rest = &rest[at.unwrap() + tok.surface.len()..];
        }
    }

    #[test]
    fn folds_partition_every_input(labels in prop::collection::vec(label(), 20..120), stratified: bool, seed: u64) {
        let folds = kfold_split(&labels, 20, stratified, seed).unwrap();
        let mut seen = vec![0u8; labels.len()];
        for f in &folds {
            prop_assert_eq!(f.train.len() + f.test.len(), labels.len());
            for &i in &f.test {
                seen[i] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
        let sizes: Vec<usize> = folds.iter().map(|f| f.test.len()).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn argmax_ignores_a_common_shift(scores in prop::array::uniform6(-50.0f64..50.0), shift in -1e3f64..1e3) {
        let shifted = scores.map(|s| s + shift);
        let a = argmax(&scores);
        let b = argmax(&shifted);
        // A shift can only merge near-ties through rounding.
        if a != b {
            prop_assert!((scores[a.code()] - scores[b.code()]).abs() < 1e-9);
        }
    }

    #[test]
    fn weighted_f1_is_the_support_weighted_mean(pairs in prop::collection::vec((label(), label()), 1..200)) {
        let cm = ConfusionMatrix::from_pairs(pairs.iter().map(|(a, b)| (a, b)));
        let scores = f1_scores(&cm);
        let n = pairs.len() as f64;
        let expected: f64 = scores.per_class.iter().map(|c| c.f1 * c.support as f64 / n).sum();
        prop_assert!((scores.weighted_f1 - expected).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&scores.weighted_f1));
    }
}

#[test]
fn argmax_breaks_ties_toward_the_lowest_code() {
    assert_eq!(argmax(&[0.0, 1.0, 1.0, 0.0, 1.0, 0.0]), SpeechAct::Recommendation);
    assert_eq!(argmax(&[2.0; 6]), SpeechAct::Assertion);
}

#[test]
fn partitions_are_disjoint_and_cover_the_corpus() {
    let corpus = generate(&SynthConfig { size: 240, ..Default::default() }).unwrap();
    for g in Granularity::ALL {
        let parts = partition_by(&corpus, g);
        let mut ids: Vec<String> = parts
            .iter()
            .flat_map(|(_, p)| p.iter().map(|t| t.id.clone()))
            .collect();
        assert_eq!(ids.len(), corpus.len(), "{g}");
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), corpus.len(), "{g}");
    }
    assert_eq!(partition_by(&corpus, Granularity::ByTopic).len(), 6);
    assert_eq!(partition_by(&corpus, Granularity::ByType).len(), 3);
}
