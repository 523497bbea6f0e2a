//! Candidate counting and chi-squared feature selection.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::corpus::{SpeechAct, NUM_CLASSES};
use crate::error::{Error, Result};

pub(crate) const DEFAULT_TOPIC_TERMS: &str = include_str!("../../data/topic_terms.txt");

/// Number of distinct tweets of each class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts(pub [u32; NUM_CLASSES]);

impl ClassCounts {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, class: SpeechAct) -> u32 {
        self.0[class.code()]
    }

    pub fn add(&mut self, class: SpeechAct) {
        self.0[class.code()] += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub key: String,
    /// Word units used for blocklist matching.
    pub units: Vec<String>,
    pub counts: ClassCounts,
}

/// Candidates sorted by key, plus the per-class tweet totals they were counted against.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateSet {
    pub candidates: Vec<Candidate>,
    pub class_totals: ClassCounts,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Candidate> {
        self.candidates
            .binary_search_by(|c| c.key.as_str().cmp(key))
            .ok()
            .map(|i| &self.candidates[i])
    }
}

/// Accumulates per-tweet key sets into a [`CandidateSet`].
#[derive(Debug, Default)]
pub(crate) struct CandidateCounter {
    counts: BTreeMap<String, (Vec<String>, ClassCounts)>,
    totals: ClassCounts,
}

impl CandidateCounter {
    pub fn add_tweet<'a, I>(&mut self, label: SpeechAct, keys: I)
    where
        I: IntoIterator<Item = (&'a str, Vec<String>)>,
    {
        self.totals.add(label);
        for (key, units) in keys {
            match self.counts.get_mut(key) {
                Some((_, counts)) => counts.add(label),
                None => {
                    let mut counts = ClassCounts::default();
                    counts.add(label);
                    self.counts.insert(key.to_string(), (units, counts));
                }
            }
        }
    }

    pub fn add_label(&mut self, label: SpeechAct) {
        self.totals.add(label);
    }

    pub fn finish(self, min_count: usize) -> CandidateSet {
        let candidates = self
            .counts
            .into_iter()
            .filter(|(_, (_, counts))| counts.total() as usize >= min_count)
            .map(|(key, (units, counts))| Candidate { key, units, counts })
            .collect();
        CandidateSet {
            candidates,
            class_totals: self.totals,
        }
    }
}

const SMOOTHING: f64 = 0.5;

/// One-sided 2x2 chi-squared of feature presence against membership in `class`,
/// with 0.5 added to every cell. Negative association scores 0.
pub fn chi2_score(counts: &ClassCounts, totals: &ClassCounts, class: SpeechAct) -> f64 {
    let present = counts.total() as f64;
    let n = totals.total() as f64;
    let in_class = totals.get(class) as f64;

    let a = counts.get(class) as f64 + SMOOTHING;
    let b = present - counts.get(class) as f64 + SMOOTHING;
    let c = in_class - counts.get(class) as f64 + SMOOTHING;
    let d = (n - in_class) - (present - counts.get(class) as f64) + SMOOTHING;

    let association = a * d - b * c;
    if association <= 0.0 {
        return 0.0;
    }
    let total = a + b + c + d;
    total * association * association / ((a + b) * (c + d) * (a + c) * (b + d))
}

/// Maximum of [`chi2_score`] over the six classes.
pub fn aggregate_chi2(counts: &ClassCounts, totals: &ClassCounts) -> f64 {
    SpeechAct::ALL
        .into_iter()
        .map(|class| chi2_score(counts, totals, class))
        .fold(0.0, f64::max)
}

/// Topic-specific terms. A candidate is dropped when one of its word units
/// contains a single-word term, or when a multi-word term appears as
/// consecutive units (or run together inside one unit, as in hashtags).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Blocklist {
    terms: Vec<Vec<String>>,
}

impl Blocklist {
    pub fn empty() -> Self {
        Blocklist::default()
    }

    pub fn from_text(text: &str) -> Self {
        let mut terms: Vec<Vec<String>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase().split_whitespace().map(str::to_string).collect())
            .collect();
        terms.sort();
        terms.dedup();
        Blocklist { terms }
    }

    /// The seed list shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_text(DEFAULT_TOPIC_TERMS)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_text(&text))
    }

    pub fn terms(&self) -> impl Iterator<Item = String> + '_ {
        self.terms.iter().map(|t| t.join(" "))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn blocks(&self, units: &[String]) -> bool {
        let units: Vec<String> = units
            .iter()
            .map(|u| u.trim_start_matches(['#', '@']).to_lowercase())
            .collect();
        self.terms.iter().any(|term| match term.as_slice() {
            [] => false,
            [word] => units.iter().any(|u| u.contains(word.as_str())),
            words => {
                let joined = words.concat();
                units.iter().any(|u| u.contains(&joined))
                    || units.windows(words.len()).any(|w| w == words)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredKey {
    pub key: String,
    pub score: f64,
}

/// Drops blocklisted candidates, ranks the rest by aggregate chi-squared
/// (descending, ties by key) and keeps the first `k`.
pub fn select_features(candidates: &CandidateSet, k: usize, blocklist: &Blocklist) -> Vec<ScoredKey> {
    let mut scored: Vec<ScoredKey> = candidates
        .candidates
        .iter()
        .filter(|c| !blocklist.blocks(&c.units))
        .map(|c| ScoredKey {
            key: c.key.clone(),
            score: aggregate_chi2(&c.counts, &candidates.class_totals),
        })
        .collect();
    scored.sort_by(|x, y| {
        y.score
            .partial_cmp(&x.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| x.key.cmp(&y.key))
    });
    scored.truncate(k);
    scored
}
