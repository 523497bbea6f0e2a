//! The grouped binary feature space and its text serialization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::analysis::{Analyzer, TweetAnalysis};
use super::select::{select_features, Blocklist, CandidateCounter, CandidateSet};
use crate::corpus::{write_file, Corpus, SpeechAct};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    Opinion,
    Vulgar,
    Emoticon,
    SpeechActVerb,
    Ngram,
    PunctQ,
    PunctExcl,
    TwitterChar,
    TwitterCharInitial,
    Abbreviation,
    Subtree,
    PosAdj,
    PosIntj,
}

impl FeatureGroup {
    /// Column order of the groups.
    pub const ALL: [FeatureGroup; 13] = [
        FeatureGroup::Opinion,
        FeatureGroup::Vulgar,
        FeatureGroup::Emoticon,
        FeatureGroup::SpeechActVerb,
        FeatureGroup::Ngram,
        FeatureGroup::PunctQ,
        FeatureGroup::PunctExcl,
        FeatureGroup::TwitterChar,
        FeatureGroup::TwitterCharInitial,
        FeatureGroup::Abbreviation,
        FeatureGroup::Subtree,
        FeatureGroup::PosAdj,
        FeatureGroup::PosIntj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureGroup::Opinion => "opinion",
            FeatureGroup::Vulgar => "vulgar",
            FeatureGroup::Emoticon => "emoticon",
            FeatureGroup::SpeechActVerb => "speech_act_verb",
            FeatureGroup::Ngram => "ngram",
            FeatureGroup::PunctQ => "punct_q",
            FeatureGroup::PunctExcl => "punct_excl",
            FeatureGroup::TwitterChar => "twitter_char",
            FeatureGroup::TwitterCharInitial => "twitter_char_initial",
            FeatureGroup::Abbreviation => "abbreviation",
            FeatureGroup::Subtree => "subtree",
            FeatureGroup::PosAdj => "pos_adj",
            FeatureGroup::PosIntj => "pos_intj",
        }
    }

    pub fn is_semantic(self) -> bool {
        matches!(
            self,
            FeatureGroup::Opinion
                | FeatureGroup::Vulgar
                | FeatureGroup::Emoticon
                | FeatureGroup::SpeechActVerb
                | FeatureGroup::Ngram
        )
    }

    /// Keys of the groups whose columns do not depend on the corpus.
    fn fixed_keys(self) -> &'static [&'static str] {
        match self {
            FeatureGroup::Opinion
            | FeatureGroup::Vulgar
            | FeatureGroup::Emoticon
            | FeatureGroup::Abbreviation => &["any"],
            FeatureGroup::PunctQ => &["?"],
            FeatureGroup::PunctExcl => &["!"],
            FeatureGroup::TwitterChar | FeatureGroup::TwitterCharInitial => &["#", "@", "RT"],
            FeatureGroup::PosAdj => &["A"],
            FeatureGroup::PosIntj => &["!"],
            FeatureGroup::SpeechActVerb | FeatureGroup::Ngram | FeatureGroup::Subtree => &[],
        }
    }
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FeatureGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown feature group {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureId {
    pub group: FeatureGroup,
    pub key: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSubset {
    #[default]
    All,
    Semantic,
    Syntactic,
}

impl FeatureSubset {
    pub fn name(self) -> &'static str {
        match self {
            FeatureSubset::All => "all",
            FeatureSubset::Semantic => "semantic",
            FeatureSubset::Syntactic => "syntactic",
        }
    }

    pub fn includes(self, group: FeatureGroup) -> bool {
        match self {
            FeatureSubset::All => true,
            FeatureSubset::Semantic => group.is_semantic(),
            FeatureSubset::Syntactic => !group.is_semantic(),
        }
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "all" | "combined" => Ok(FeatureSubset::All),
            "semantic" | "semantic_only" | "sem" => Ok(FeatureSubset::Semantic),
            "syntactic" | "syntactic_only" | "syn" => Ok(FeatureSubset::Syntactic),
            other => Err(Error::InvalidArgument(format!("unknown feature subset {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VocabConfig {
    /// Cap on selected n-grams.
    pub k_ngram: usize,
    /// Cap on selected sub-trees.
    pub k_subtree: usize,
    /// Minimum number of distinct training tweets for a candidate.
    pub min_count: usize,
    pub blocklist: Blocklist,
}

impl Default for VocabConfig {
    fn default() -> Self {
        VocabConfig {
            k_ngram: 1415,
            k_subtree: 1655,
            min_count: 5,
            blocklist: Blocklist::bundled(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabHeader {
    pub k_ngram: usize,
    pub k_subtree: usize,
    pub min_count: usize,
    pub n_max: usize,
    pub include_siblings: bool,
    pub subset: FeatureSubset,
    pub corpus_fingerprint: String,
    pub lexicon_fingerprint: String,
}

const MAGIC: &str = "speechact-vocabulary";
const VERSION: u32 = 1;

/// Ordered binary feature columns.
#[derive(Debug, Clone)]
pub struct FeatureVocabulary {
    header: VocabHeader,
    features: Vec<FeatureId>,
    index: HashMap<FeatureId, usize>,
    /// Selection scores for n-gram and sub-tree columns, when built in this process.
    scores: Vec<Option<f64>>,
    fingerprint: String,
}

impl PartialEq for FeatureVocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.header == other.header && self.features == other.features
    }
}

impl FeatureVocabulary {
    fn assemble(
        header: VocabHeader,
        columns: Vec<(FeatureId, Option<f64>)>,
    ) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let mut index = HashMap::with_capacity(columns.len());
        let mut features = Vec::with_capacity(columns.len());
        let mut scores = Vec::with_capacity(columns.len());
        for (i, (id, score)) in columns.into_iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Format(format!(
                    "duplicate feature {}\t{}",
                    id.group, id.key
                )));
            }
            features.push(id);
            scores.push(score);
        }
        let mut vocab = FeatureVocabulary {
            header,
            features,
            index,
            scores,
            fingerprint: String::new(),
        };
        vocab.fingerprint = hex::encode(Sha256::digest(vocab.to_text().as_bytes()));
        Ok(vocab)
    }

    pub fn header(&self) -> &VocabHeader {
        &self.header
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[FeatureId] {
        &self.features
    }

    pub fn column(&self, group: FeatureGroup, key: &str) -> Option<usize> {
        self.index
            .get(&FeatureId {
                group,
                key: key.to_string(),
            })
            .copied()
    }

    pub fn score(&self, column: usize) -> Option<f64> {
        self.scores.get(column).copied().flatten()
    }

    /// Content hash of the serialized vocabulary.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn group_size(&self, group: FeatureGroup) -> usize {
        self.features.iter().filter(|f| f.group == group).count()
    }

    pub fn group_sizes(&self) -> Vec<(FeatureGroup, usize)> {
        FeatureGroup::ALL
            .into_iter()
            .map(|g| (g, self.group_size(g)))
            .collect()
    }

    pub fn semantic_len(&self) -> usize {
        self.features.iter().filter(|f| f.group.is_semantic()).count()
    }

    pub fn syntactic_len(&self) -> usize {
        self.len() - self.semantic_len()
    }

    /// A vocabulary holding only the columns of `subset`, in the same order.
    pub fn restrict(&self, subset: FeatureSubset) -> Result<FeatureVocabulary> {
        if subset == FeatureSubset::All {
            return Ok(self.clone());
        }
        let mut header = self.header.clone();
        header.subset = subset;
        let columns = self
            .features
            .iter()
            .zip(&self.scores)
            .filter(|(f, _)| subset.includes(f.group))
            .map(|(f, s)| (f.clone(), *s))
            .collect();
        Self::assemble(header, columns)
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "{MAGIC}\t{VERSION}\nk_ngram\t{}\nk_subtree\t{}\nmin_count\t{}\nn_max\t{}\nsiblings\t{}\nsubset\t{}\ncorpus\t{}\nlexicons\t{}\ncolumns\t{}\n\n",
            h.k_ngram,
            h.k_subtree,
            h.min_count,
            h.n_max,
            h.include_siblings,
            h.subset,
            h.corpus_fingerprint,
            h.lexicon_fingerprint,
            self.features.len()
        );
        for f in &self.features {
            out.push_str(f.group.name());
            out.push('\t');
            out.push_str(&f.key);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |line: usize, message: String| Error::Malformed {
            file: "vocabulary".into(),
            line,
            message,
        };
        let lines: Vec<&str> = text.lines().collect();
        let field = |i: usize, name: &str| -> Result<&str> {
            match lines.get(i).and_then(|l| l.split_once('\t')) {
                Some((k, v)) if k == name => Ok(v),
                _ => Err(bad(i + 1, format!("expected `{name}` header"))),
            }
        };
        let number = |i: usize, name: &str| -> Result<usize> {
            let v = field(i, name)?;
            v.parse()
                .map_err(|_| bad(i + 1, format!("bad {name} value {v:?}")))
        };
        let version = field(0, MAGIC)?;
        if version != VERSION.to_string() {
            return Err(bad(1, format!("unsupported vocabulary version {version}")));
        }
        let siblings = field(5, "siblings")?;
        let header = VocabHeader {
            k_ngram: number(1, "k_ngram")?,
            k_subtree: number(2, "k_subtree")?,
            min_count: number(3, "min_count")?,
            n_max: number(4, "n_max")?,
            include_siblings: siblings
                .parse()
                .map_err(|_| bad(6, format!("bad siblings value {siblings:?}")))?,
            subset: field(6, "subset")?.parse()?,
            corpus_fingerprint: field(7, "corpus")?.to_string(),
            lexicon_fingerprint: field(8, "lexicons")?.to_string(),
        };
        let columns = number(9, "columns")?;
        if lines.get(10) != Some(&"") {
            return Err(bad(11, "expected blank line after header".into()));
        }
        let body = &lines[11..];
        if body.len() != columns {
            return Err(Error::Format(format!(
                "vocabulary declares {columns} columns but lists {}",
                body.len()
            )));
        }
        let mut features = Vec::with_capacity(columns);
        for (i, line) in body.iter().enumerate() {
            let (group, key) = line
                .split_once('\t')
                .ok_or_else(|| bad(i + 12, "expected group<TAB>key".into()))?;
            features.push((
                FeatureId {
                    group: group.parse()?,
                    key: key.to_string(),
                },
                None,
            ));
        }
        Self::assemble(header, features)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_text().as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

/// Sub-tree key split into word forms, for blocklist matching.
fn subtree_units(key: &str) -> Vec<String> {
    key.split(['>', '{', '}', ','])
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

pub(crate) fn ngram_candidates<'a>(
    docs: impl IntoIterator<Item = (&'a TweetAnalysis, SpeechAct)>,
    min_count: usize,
) -> CandidateSet {
    let mut counter = CandidateCounter::default();
    for (analysis, label) in docs {
        counter.add_tweet(
            label,
            analysis
                .ngrams
                .iter()
                .map(|g| (g.as_str(), g.split(' ').map(str::to_string).collect())),
        );
    }
    counter.finish(min_count)
}

pub(crate) fn subtree_candidates<'a>(
    docs: impl IntoIterator<Item = (&'a TweetAnalysis, SpeechAct)>,
    min_count: usize,
) -> CandidateSet {
    let mut counter = CandidateCounter::default();
    for (analysis, label) in docs {
        if analysis.has_parse {
            counter.add_tweet(
                label,
                analysis.subtrees.iter().map(|k| (k.as_str(), subtree_units(k))),
            );
        } else {
            counter.add_label(label);
        }
    }
    counter.finish(min_count)
}

/// Builds a vocabulary from analysed, labeled training tweets.
pub fn build_vocabulary_from<'a, I>(
    docs: I,
    config: &VocabConfig,
    analyzer: &Analyzer,
    corpus_fingerprint: String,
) -> Result<FeatureVocabulary>
where
    I: IntoIterator<Item = (&'a TweetAnalysis, SpeechAct)>,
    I::IntoIter: Clone,
{
    let docs = docs.into_iter();
    let ngrams = ngram_candidates(docs.clone(), config.min_count);
    let subtrees = subtree_candidates(docs, config.min_count);
    let selected_ngrams = select_features(&ngrams, config.k_ngram, &config.blocklist);
    let selected_subtrees = select_features(&subtrees, config.k_subtree, &config.blocklist);

    let verbs: BTreeSet<&str> = analyzer.lexicons().speech_act_verbs.entries().collect();

    let mut columns: Vec<(FeatureId, Option<f64>)> = Vec::new();
    for group in FeatureGroup::ALL {
        let mut keys: Vec<(String, Option<f64>)> = match group {
            FeatureGroup::SpeechActVerb => verbs.iter().map(|v| (v.to_string(), None)).collect(),
            FeatureGroup::Ngram => selected_ngrams
                .iter()
                .map(|s| (s.key.clone(), Some(s.score)))
                .collect(),
            FeatureGroup::Subtree => selected_subtrees
                .iter()
                .map(|s| (s.key.clone(), Some(s.score)))
                .collect(),
            _ => group.fixed_keys().iter().map(|k| (k.to_string(), None)).collect(),
        };
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        columns.extend(
            keys.into_iter()
                .map(|(key, score)| (FeatureId { group, key }, score)),
        );
    }

    let analyzer_config = analyzer.config();
    let header = VocabHeader {
        k_ngram: config.k_ngram,
        k_subtree: config.k_subtree,
        min_count: config.min_count,
        n_max: analyzer_config.n_max,
        include_siblings: analyzer_config.include_siblings,
        subset: FeatureSubset::All,
        corpus_fingerprint,
        lexicon_fingerprint: analyzer.lexicons().fingerprint(),
    };
    FeatureVocabulary::assemble(header, columns)
}

/// Analyses a labeled corpus and builds its vocabulary.
pub fn build_vocabulary(
    corpus: &Corpus,
    config: &VocabConfig,
    analyzer: &Analyzer,
) -> Result<FeatureVocabulary> {
    let labels = corpus.labels()?;
    let analyses: Vec<TweetAnalysis> = corpus.iter().map(|t| analyzer.analyze(t)).collect();
    build_vocabulary_from(
        analyses.iter().zip(labels.iter().copied()),
        config,
        analyzer,
        corpus.fingerprint(),
    )
}

/// N-gram candidates of a labeled corpus, tokenized with the bundled lexicons.
pub fn build_ngram_candidates(corpus: &Corpus, n_max: usize, min_count: usize) -> Result<CandidateSet> {
    let analyzer = Analyzer::new(
        crate::text::Lexicons::bundled(),
        super::AnalyzerConfig {
            n_max,
            include_siblings: true,
        },
    );
    let labels = corpus.labels()?;
    let analyses: Vec<TweetAnalysis> = corpus.iter().map(|t| analyzer.analyze(t)).collect();
    Ok(ngram_candidates(analyses.iter().zip(labels), min_count))
}

/// Sub-tree candidates of a labeled corpus; tweets without parses only count toward class totals.
pub fn build_subtree_candidates(
    corpus: &Corpus,
    min_count: usize,
    include_siblings: bool,
) -> Result<CandidateSet> {
    let labels = corpus.labels()?;
    let mut counter = CandidateCounter::default();
    for (tweet, label) in corpus.iter().zip(labels) {
        match &tweet.parse {
            Some(parse) => {
                let keys: Vec<String> = super::extract_subtrees(parse, include_siblings)
                    .into_iter()
                    .map(|k| k.into_string())
                    .collect();
                counter.add_tweet(label, keys.iter().map(|k| (k.as_str(), subtree_units(k))));
            }
            None => counter.add_label(label),
        }
    }
    Ok(counter.finish(min_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DependencyParse, ParseToken, TopicType, Tweet};

    fn tweet(id: usize, text: &str, label: SpeechAct) -> Tweet {
        let words: Vec<&str> = text.split_whitespace().collect();
        let tokens = words
            .iter()
            .enumerate()
            .map(|(i, w)| ParseToken {
                index: i + 1,
                form: w.to_string(),
                pos: if i == 0 { "V".into() } else { "N".into() },
                head: i,
            })
            .collect();
        Tweet {
            id: format!("t{id}"),
            text: text.to_string(),
            topic: "misc".into(),
            topic_type: TopicType::Event,
            label: Some(label),
            parse: Some(DependencyParse::new(tokens).unwrap()),
        }
    }

    fn corpus() -> Corpus {
        let mut tweets = Vec::new();
        for i in 0..30 {
            let (text, label) = match i % 3 {
                0 => ("say hello world", SpeechAct::Assertion),
                1 => ("ask why now?", SpeechAct::Question),
                _ => ("go boston go", SpeechAct::Expression),
            };
            tweets.push(tweet(i, text, label));
        }
        Corpus::new(tweets).unwrap()
    }

    fn analyzer() -> Analyzer {
        Analyzer::new(crate::text::Lexicons::bundled(), Default::default())
    }

    #[test]
    fn fixed_columns_without_selection() {
        let config = VocabConfig {
            k_ngram: 0,
            k_subtree: 0,
            ..Default::default()
        };
        let vocab = build_vocabulary(&corpus(), &config, &analyzer()).unwrap();
        assert_eq!(vocab.semantic_len(), 232);
        assert_eq!(vocab.syntactic_len(), 11);
        assert_eq!(vocab.len(), 243);
    }

    #[test]
    fn groups_are_contiguous_and_sorted() {
        let vocab = build_vocabulary(&corpus(), &VocabConfig::default(), &analyzer()).unwrap();
        let f = vocab.features();
        for w in f.windows(2) {
            assert!(w[0].group < w[1].group || (w[0].group == w[1].group && w[0].key < w[1].key));
        }
        // Topic terms never reach the vocabulary.
        assert!(f.iter().all(|f| !f.key.contains("boston")));
        assert!(vocab.column(FeatureGroup::Ngram, "hello world").is_some());
        assert!(vocab.column(FeatureGroup::Subtree, "say>hello>world").is_some());
    }

    #[test]
    fn text_round_trip_preserves_fingerprint() {
        let vocab = build_vocabulary(&corpus(), &VocabConfig::default(), &analyzer()).unwrap();
        let back = FeatureVocabulary::from_text(&vocab.to_text()).unwrap();
        assert_eq!(back, vocab);
        assert_eq!(back.fingerprint(), vocab.fingerprint());
        let truncated: String = vocab.to_text().lines().take(20).map(|l| format!("{l}\n")).collect();
        assert!(FeatureVocabulary::from_text(&truncated).is_err());
        assert!(FeatureVocabulary::from_text("nonsense").is_err());
    }

    #[test]
    fn restriction_partitions_columns() {
        let vocab = build_vocabulary(&corpus(), &VocabConfig::default(), &analyzer()).unwrap();
        let sem = vocab.restrict(FeatureSubset::Semantic).unwrap();
        let syn = vocab.restrict(FeatureSubset::Syntactic).unwrap();
        assert_eq!(sem.len() + syn.len(), vocab.len());
        assert!(sem.features().iter().all(|f| f.group.is_semantic()));
        assert_ne!(sem.fingerprint(), vocab.fingerprint());
    }

    #[test]
    fn vectorizer_sets_expected_columns() {
        let analyzer = analyzer();
        let c = corpus();
        let vocab = build_vocabulary(&c, &VocabConfig::default(), &analyzer).unwrap();
        let v = super::super::vectorize(&c.tweets[1], &vocab, &analyzer);
        let on = |g, k| v.get(vocab.column(g, k).unwrap());
        assert!(on(FeatureGroup::PunctQ, "?"));
        assert!(!on(FeatureGroup::PunctExcl, "!"));
        assert!(on(FeatureGroup::SpeechActVerb, "ask"));
        assert!(on(FeatureGroup::Ngram, "why now"));
        assert!(!on(FeatureGroup::Ngram, "hello"));
    }
}
