use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{SpeechAct, NUM_CLASSES};
use crate::error::{Error, Result};

/// Tweet indices of one cross-validation split, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Assigns each of `n` items to one of `k` test folds.
///
/// Items are shuffled with `seed` (within each class when `labels` is given,
/// classes then concatenated in code order) and dealt round-robin, so fold
/// sizes differ by at most one and so do per-class counts.
pub fn fold_assignment(n: usize, labels: Option<&[SpeechAct]>, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 folds, got {k}")));
    }
    if n < k {
        return Err(Error::TooFewForFolds { size: n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order: Vec<usize> = match labels {
        Some(labels) => {
            assert_eq!(labels.len(), n, "one label per item");
            let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); NUM_CLASSES];
            for (i, l) in labels.iter().enumerate() {
                by_class[l.code()].push(i);
            }
            by_class
                .into_iter()
                .flat_map(|mut members| {
                    members.shuffle(&mut rng);
                    members
                })
                .collect()
        }
        None => {
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(&mut rng);
            all
        }
    };
    let mut fold = vec![0; n];
    for (pos, i) in order.into_iter().enumerate() {
        fold[i] = pos % k;
    }
    Ok(fold)
}

/// Train/test splits for k-fold cross-validation over `labels`.
pub fn kfold_split(labels: &[SpeechAct], k: usize, stratified: bool, seed: u64) -> Result<Vec<Fold>> {
    let assignment = fold_assignment(labels.len(), stratified.then_some(labels), k, seed)?;
    Ok((0..k)
        .map(|f| {
            let (test, train) = (0..labels.len()).partition(|&i| assignment[i] == f);
            Fold { train, test }
        })
        .collect())
}
