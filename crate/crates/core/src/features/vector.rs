use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::analysis::{Analyzer, TweetAnalysis};
use super::vocab::{FeatureGroup, FeatureVocabulary};
use crate::corpus::Tweet;
use crate::error::{Error, Result};

/// A binary vector stored as its strictly increasing active indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseBinaryVector {
    dim: usize,
    indices: Vec<u32>,
}

impl SparseBinaryVector {
    pub fn new(dim: usize, mut indices: Vec<u32>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            if last as usize >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: last as usize + 1,
                });
            }
        }
        Ok(SparseBinaryVector { dim, indices })
    }

    pub fn from_dense(values: &[bool]) -> Self {
        let indices = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| i as u32)
            .collect();
        SparseBinaryVector {
            dim: values.len(),
            indices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn get(&self, i: usize) -> bool {
        self.indices.binary_search(&(i as u32)).is_ok()
    }

    pub fn to_dense(&self) -> Vec<bool> {
        let mut dense = vec![false; self.dim];
        for &i in &self.indices {
            dense[i as usize] = true;
        }
        dense
    }

    /// Sum of `weights[i]` over active indices.
    pub fn dot(&self, weights: &[f64]) -> f64 {
        self.indices.iter().map(|&i| weights[i as usize]).sum()
    }
}

/// Maps tweet analyses to columns of a fixed vocabulary.
#[derive(Debug, Clone)]
pub struct Vectorizer {
    dim: usize,
    ngram: HashMap<String, u32>,
    subtree: HashMap<String, u32>,
    verb: HashMap<String, u32>,
    fixed: HashMap<(FeatureGroup, &'static str), u32>,
}

const FIXED: [(FeatureGroup, &str); 14] = [
    (FeatureGroup::Opinion, "any"),
    (FeatureGroup::Vulgar, "any"),
    (FeatureGroup::Emoticon, "any"),
    (FeatureGroup::PunctQ, "?"),
    (FeatureGroup::PunctExcl, "!"),
    (FeatureGroup::TwitterChar, "#"),
    (FeatureGroup::TwitterChar, "@"),
    (FeatureGroup::TwitterChar, "RT"),
    (FeatureGroup::TwitterCharInitial, "#"),
    (FeatureGroup::TwitterCharInitial, "@"),
    (FeatureGroup::TwitterCharInitial, "RT"),
    (FeatureGroup::Abbreviation, "any"),
    (FeatureGroup::PosAdj, "A"),
    (FeatureGroup::PosIntj, "!"),
];

impl Vectorizer {
    pub fn new(vocab: &FeatureVocabulary) -> Self {
        let mut ngram = HashMap::new();
        let mut subtree = HashMap::new();
        let mut verb = HashMap::new();
        let mut fixed = HashMap::new();
        for (i, f) in vocab.features().iter().enumerate() {
            let i = i as u32;
            match f.group {
                FeatureGroup::Ngram => {
                    ngram.insert(f.key.clone(), i);
                }
                FeatureGroup::Subtree => {
                    subtree.insert(f.key.clone(), i);
                }
                FeatureGroup::SpeechActVerb => {
                    verb.insert(f.key.clone(), i);
                }
                group => {
                    if let Some(&(g, k)) = FIXED.iter().find(|(g, k)| *g == group && *k == f.key) {
                        fixed.insert((g, k), i);
                    }
                }
            }
        }
        Vectorizer {
            dim: vocab.len(),
            ngram,
            subtree,
            verb,
            fixed,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectorize(&self, a: &TweetAnalysis) -> SparseBinaryVector {
        let mut indices = Vec::new();
        let flags = [
            a.opinion,
            a.vulgar,
            a.emoticon,
            a.question_mark,
            a.exclamation_mark,
            a.has_hashtag,
            a.has_mention,
            a.has_rt,
            a.initial_hashtag,
            a.initial_mention,
            a.initial_rt,
            a.abbreviation,
            a.adjective,
            a.interjection,
        ];
        for (&on, key) in flags.iter().zip(FIXED) {
            if on {
                if let Some(&i) = self.fixed.get(&key) {
                    indices.push(i);
                }
            }
        }
        indices.extend(a.verbs.iter().filter_map(|v| self.verb.get(v)));
        indices.extend(a.ngrams.iter().filter_map(|g| self.ngram.get(g)));
        indices.extend(a.subtrees.iter().filter_map(|s| self.subtree.get(s)));
        indices.sort_unstable();
        indices.dedup();
        SparseBinaryVector {
            dim: self.dim,
            indices,
        }
    }
}

/// Analyses and vectorizes one tweet. Prefer a shared [`Vectorizer`] for many tweets.
pub fn vectorize(tweet: &Tweet, vocab: &FeatureVocabulary, analyzer: &Analyzer) -> SparseBinaryVector {
    Vectorizer::new(vocab).vectorize(&analyzer.analyze(tweet))
}
