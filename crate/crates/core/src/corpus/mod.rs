//! Label taxonomy, the tweet data model and corpus ingestion.
//!
//! Corpora are line-delimited JSON, one tweet per line:
//!
//! ```text
//! {"id":"t1","text":"why?","topic":"redsox","topic_type":"longstanding","label":"question"}
//! ```
//!
//! `label` may be omitted for prediction-only input; unknown fields are ignored.

mod label;
mod parse;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use label::{SpeechAct, TopicType, NUM_CLASSES};
pub use parse::{
    format_parses, read_parses, DependencyParse, ParseToken, ADJECTIVE_TAG, INTERJECTION_TAG,
    VERB_TAG,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub text: String,
    pub topic: String,
    pub topic_type: TopicType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<SpeechAct>,
    #[serde(skip)]
    pub parse: Option<DependencyParse>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub tweets: Vec<Tweet>,
    pub provenance: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Accept a file with no records instead of failing with [`Error::EmptyCorpus`].
    pub allow_empty: bool,
}

/// Loads a corpus and optionally attaches parses from a sidecar file.
pub fn load_corpus(path: &Path, parses_path: Option<&Path>) -> Result<Corpus> {
    load_corpus_with(path, parses_path, LoadOptions::default())
}

pub fn load_corpus_with(
    path: &Path,
    parses_path: Option<&Path>,
    options: LoadOptions,
) -> Result<Corpus> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut corpus = parse_corpus(&content, &path.display().to_string())?;
    corpus.provenance.push(path.to_path_buf());
    if corpus.tweets.is_empty() && !options.allow_empty {
        return Err(Error::EmptyCorpus);
    }
    if let Some(parses_path) = parses_path {
        let parses = read_parses(parses_path)?;
        corpus.attach_parses(parses)?;
        corpus.provenance.push(parses_path.to_path_buf());
    }
    Ok(corpus)
}

fn parse_corpus(content: &str, file: &str) -> Result<Corpus> {
    let mut tweets = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| Error::Malformed {
            file: file.to_string(),
            line: i + 1,
            message,
        };
        let tweet: Tweet = serde_json::from_str(line).map_err(|e| malformed(e.to_string()))?;
        if tweet.id.is_empty() {
            return Err(malformed("empty id".into()));
        }
        if tweet.text.is_empty() {
            return Err(malformed(format!("tweet {:?} has empty text", tweet.id)));
        }
        if !seen.insert(tweet.id.clone()) {
            return Err(Error::DuplicateId(tweet.id));
        }
        tweets.push(tweet);
    }
    Ok(Corpus {
        tweets,
        provenance: Vec::new(),
    })
}

impl Corpus {
    pub fn new(tweets: Vec<Tweet>) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in &tweets {
            if !seen.insert(t.id.as_str()) {
                return Err(Error::DuplicateId(t.id.clone()));
            }
        }
        Ok(Corpus {
            tweets,
            provenance: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tweet> {
        self.tweets.iter()
    }

    /// Attaches parses by tweet id. Every parse must name a tweet in the corpus.
    pub fn attach_parses(&mut self, parses: Vec<(String, DependencyParse)>) -> Result<()> {
        let index: HashMap<&str, usize> = self
            .tweets
            .iter()
            .enumerate()
            .map(|(i, t)| (t.id.as_str(), i))
            .collect();
        let mut slots = Vec::with_capacity(parses.len());
        for (id, parse) in parses {
            let &slot = index
                .get(id.as_str())
                .ok_or_else(|| Error::UnknownParseId(id.clone()))?;
            slots.push((slot, parse));
        }
        for (slot, parse) in slots {
            self.tweets[slot].parse = Some(parse);
        }
        Ok(())
    }

    /// Number of tweets without an attached parse.
    pub fn missing_parses(&self) -> usize {
        self.tweets.iter().filter(|t| t.parse.is_none()).count()
    }

    pub fn labels(&self) -> Result<Vec<SpeechAct>> {
        self.tweets
            .iter()
            .map(|t| t.label.ok_or_else(|| Error::Unlabeled(t.id.clone())))
            .collect()
    }

    /// The corpus records (without parses) in line-delimited form.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for tweet in &self.tweets {
            out.push_str(&serde_json::to_string(tweet).expect("tweet serializes"));
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_jsonl().as_bytes())
    }

    /// Hash of the records and attached parses, independent of file paths.
    pub fn fingerprint(&self) -> String {
        let parses = format_parses(
            self.tweets
                .iter()
                .filter_map(|t| t.parse.as_ref().map(|p| (t.id.as_str(), p))),
        );
        let mut hasher = Sha256::new();
        hasher.update(self.to_jsonl().as_bytes());
        hasher.update([0u8]);
        hasher.update(parses.as_bytes());
        hex::encode(hasher.finalize())
    }

    /// Writes the sidecar for every tweet that has a parse, in corpus order.
    pub fn save_parses(&self, path: &Path) -> Result<()> {
        let text = format_parses(
            self.tweets
                .iter()
                .filter_map(|t| t.parse.as_ref().map(|p| (t.id.as_str(), p))),
        );
        write_file(path, text.as_bytes())
    }

    /// A sub-corpus holding the given tweet indices in the given order.
    pub fn select(&self, indices: &[usize]) -> Corpus {
        Corpus {
            tweets: indices.iter().map(|&i| self.tweets[i].clone()).collect(),
            provenance: self.provenance.clone(),
        }
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Tweet;
    type IntoIter = std::slice::Iter<'a, Tweet>;

    fn into_iter(self) -> Self::IntoIter {
        self.tweets.iter()
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(bytes).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    TwitterWide,
    ByType,
    ByTopic,
}

impl Granularity {
    pub const ALL: [Granularity; 3] = [
        Granularity::TwitterWide,
        Granularity::ByType,
        Granularity::ByTopic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Granularity::TwitterWide => "twitter_wide",
            Granularity::ByType => "by_type",
            Granularity::ByTopic => "by_topic",
        }
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Granularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().replace('-', "_").as_str() {
            "twitter_wide" | "all" | "twitter" => Ok(Granularity::TwitterWide),
            "by_type" | "type" => Ok(Granularity::ByType),
            "by_topic" | "topic" => Ok(Granularity::ByTopic),
            other => Err(Error::InvalidArgument(format!("unknown granularity {other:?}"))),
        }
    }
}

/// Splits a corpus into disjoint partitions covering it.
///
/// Type partitions follow [`TopicType::ALL`] order, topic partitions are
/// sorted by topic string; tweet order inside each partition is preserved.
pub fn partition_by(corpus: &Corpus, granularity: Granularity) -> Vec<(String, Corpus)> {
    let sub = |tweets: Vec<Tweet>| Corpus {
        tweets,
        provenance: corpus.provenance.clone(),
    };
    match granularity {
        Granularity::TwitterWide => vec![("all".to_string(), corpus.clone())],
        Granularity::ByType => {
            let mut groups: BTreeMap<TopicType, Vec<Tweet>> = BTreeMap::new();
            for t in &corpus.tweets {
                groups.entry(t.topic_type).or_default().push(t.clone());
            }
            groups
                .into_iter()
                .map(|(k, v)| (k.name().to_string(), sub(v)))
                .collect()
        }
        Granularity::ByTopic => {
            let mut groups: BTreeMap<String, Vec<Tweet>> = BTreeMap::new();
            for t in &corpus.tweets {
                groups.entry(t.topic.clone()).or_default().push(t.clone());
            }
            groups.into_iter().map(|(k, v)| (k, sub(v))).collect()
        }
    }
}

/// Fraction of tweets per class; absent classes map to 0.
pub fn class_distribution(corpus: &Corpus) -> Result<BTreeMap<SpeechAct, f64>> {
    let labels = corpus.labels()?;
    let mut counts = [0usize; NUM_CLASSES];
    for label in &labels {
        counts[label.code()] += 1;
    }
    let total = labels.len();
    Ok(SpeechAct::ALL
        .into_iter()
        .map(|act| {
            let fraction = if total == 0 {
                0.0
            } else {
                counts[act.code()] as f64 / total as f64
            };
            (act, fraction)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tweet(id: &str, topic: &str, topic_type: TopicType, label: SpeechAct) -> Tweet {
        Tweet {
            id: id.into(),
            text: format!("text of {id}"),
            topic: topic.into(),
            topic_type,
            label: Some(label),
            parse: None,
        }
    }

    #[test]
    fn parses_single_record() {
        let line = r#"{"id":"t1","text":"why?","topic":"redsox","topic_type":"longstanding","label":"question"}"#;
        let corpus = parse_corpus(line, "c.jsonl").unwrap();
        assert_eq!(corpus.len(), 1);
        let t = &corpus.tweets[0];
        assert_eq!(t.label, Some(SpeechAct::Question));
        assert_eq!(t.topic_type, TopicType::LongStanding);
        assert_eq!(t.text, "why?");
    }

    #[test]
    fn ignores_unknown_fields_and_accepts_missing_label() {
        let line = r#"{"id":"t1","text":"hi","topic":"x","topic_type":"event","lang":"en"}"#;
        let corpus = parse_corpus(line, "c").unwrap();
        assert_eq!(corpus.tweets[0].label, None);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = concat!(
            r#"{"id":"t1","text":"a","topic":"x","topic_type":"event"}"#,
            "\n",
            r#"{"id":"t1","text":"b","topic":"x","topic_type":"event"}"#
        );
        match parse_corpus(text, "c") {
            Err(Error::DuplicateId(id)) => assert_eq!(id, "t1"),
            other => panic!("expected duplicate id, got {other:?}"),
        }
    }

    #[test]
    fn malformed_record_reports_line() {
        let text = concat!(
            r#"{"id":"t1","text":"a","topic":"x","topic_type":"event"}"#,
            "\n",
            r#"{"id":"t2","text":"b","topic":"x","topic_type":"event","label":"rant"}"#
        );
        match parse_corpus(text, "c") {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed, got {other:?}"),
        }
    }

    #[test]
    fn class_distribution_fractions() {
        use SpeechAct::*;
        let corpus = Corpus::new(vec![
            tweet("a", "x", TopicType::Entity, Assertion),
            tweet("b", "x", TopicType::Entity, Assertion),
            tweet("c", "x", TopicType::Entity, Assertion),
            tweet("d", "x", TopicType::Entity, Question),
        ])
        .unwrap();
        let dist = class_distribution(&corpus).unwrap();
        assert_eq!(dist[&Assertion], 0.75);
        assert_eq!(dist[&Question], 0.25);
        assert_eq!(dist[&Request], 0.0);
        assert_eq!(dist.len(), 6);

        let single = Corpus::new(vec![tweet("a", "x", TopicType::Entity, Request)]).unwrap();
        assert_eq!(class_distribution(&single).unwrap()[&Request], 1.0);
    }

    #[test]
    fn class_distribution_requires_labels() {
        let mut t = tweet("a", "x", TopicType::Entity, SpeechAct::Request);
        t.label = None;
        let corpus = Corpus::new(vec![t]).unwrap();
        assert!(matches!(class_distribution(&corpus), Err(Error::Unlabeled(_))));
    }

    #[test]
    fn partitions_by_topic_and_type() {
        use SpeechAct::*;
        let corpus = Corpus::new(vec![
            tweet("a", "ashton", TopicType::Entity, Assertion),
            tweet("b", "redsox", TopicType::LongStanding, Question),
            tweet("c", "ashton", TopicType::Entity, Expression),
            tweet("d", "boston", TopicType::Event, Request),
        ])
        .unwrap();
        let topics = partition_by(&corpus, Granularity::ByTopic);
        let keys: Vec<&str> = topics.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["ashton", "boston", "redsox"]);
        assert_eq!(topics[0].1.tweets[0].id, "a");
        assert_eq!(topics[0].1.tweets[1].id, "c");

        let types = partition_by(&corpus, Granularity::ByType);
        assert_eq!(types.len(), 3);
        assert_eq!(types.iter().map(|(_, c)| c.len()).sum::<usize>(), 4);

        let wide = partition_by(&corpus, Granularity::TwitterWide);
        assert_eq!(wide.len(), 1);
        assert_eq!(wide[0].0, "all");
        assert_eq!(wide[0].1.len(), 4);
    }

    #[test]
    fn attach_rejects_unknown_ids() {
        let mut corpus =
            Corpus::new(vec![tweet("a", "x", TopicType::Entity, SpeechAct::Assertion)]).unwrap();
        let parse = DependencyParse::new(vec![ParseToken {
            index: 1,
            form: "hi".into(),
            pos: "!".into(),
            head: 0,
        }])
        .unwrap();
        let err = corpus.attach_parses(vec![("zzz".into(), parse)]).unwrap_err();
        assert!(matches!(err, Error::UnknownParseId(id) if id == "zzz"));
    }
}
