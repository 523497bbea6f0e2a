use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::porter::porter_stem;
use super::tokenize::{Token, TokenKind};
use crate::corpus::{DependencyParse, VERB_TAG};
use crate::error::{Error, Result};

pub(crate) const BUNDLED_OPINION: &str = include_str!("../../data/lexicons/opinion.txt");
pub(crate) const BUNDLED_VULGAR: &str = include_str!("../../data/lexicons/vulgar.txt");
pub(crate) const BUNDLED_EMOTICONS: &str = include_str!("../../data/lexicons/emoticons.txt");
pub(crate) const BUNDLED_VERBS: &str = include_str!("../../data/lexicons/speech_act_verbs.txt");
pub(crate) const BUNDLED_ABBREVIATIONS: &str =
    include_str!("../../data/lexicons/abbreviations.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// Single tokens, compared on their case-folded form.
    Token,
    /// Whitespace-separated token sequences.
    Phrase,
    /// Single tokens compared after Porter stemming.
    StemmedToken,
}

/// A word list with its matching behaviour. Entries are stored normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    entries: BTreeSet<String>,
    mode: MatchMode,
    target: TokenKind,
    raw_count: usize,
    max_phrase_len: usize,
}

/// Lines of a lexicon file: trimmed, without blanks and `#` comments.
fn entry_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn normalize_entry(entry: &str, mode: MatchMode) -> String {
    let folded = entry.to_lowercase();
    match mode {
        MatchMode::Token => folded,
        MatchMode::Phrase => folded.split_whitespace().collect::<Vec<_>>().join(" "),
        MatchMode::StemmedToken => porter_stem(&folded),
    }
}

impl Lexicon {
    /// Parses lexicon text. Matches word tokens unless retargeted with [`Lexicon::targeting`].
    pub fn from_text(name: &str, text: &str, mode: MatchMode) -> Result<Self> {
        let mut raw_count = 0;
        let mut seen_raw = HashSet::new();
        let mut entries = BTreeSet::new();
        for line in entry_lines(text) {
            if seen_raw.insert(line.to_lowercase()) {
                raw_count += 1;
            }
            entries.insert(normalize_entry(line, mode));
        }
        if entries.is_empty() {
            return Err(Error::EmptyLexicon(name.to_string()));
        }
        let max_phrase_len = entries
            .iter()
            .map(|e| e.split(' ').count())
            .max()
            .unwrap_or(1);
        log::debug!("lexicon {name}: {} entries", entries.len());
        Ok(Lexicon {
            name: name.to_string(),
            entries,
            mode,
            target: TokenKind::Word,
            raw_count,
            max_phrase_len,
        })
    }

    pub fn load(path: &Path, mode: MatchMode) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Self::from_text(&name, &text, mode)
    }

    pub(crate) fn emoticons_from_str(name: &str, text: &str) -> Result<Self> {
        Ok(Self::from_text(name, text, MatchMode::Token)?.targeting(TokenKind::Emoticon))
    }

    /// Restricts token matching to tokens of `kind`.
    pub fn targeting(mut self, kind: TokenKind) -> Self {
        self.target = kind;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> MatchMode {
        self.mode
    }

    pub fn target(&self) -> TokenKind {
        self.target
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct case-folded source lines, before stemming merged any.
    pub fn raw_count(&self) -> usize {
        self.raw_count
    }

    pub fn entries(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }

    pub fn contains(&self, normalized: &str) -> bool {
        self.entries.contains(normalized)
    }

    fn update_digest(&self, hasher: &mut Sha256) {
        hasher.update(self.name.as_bytes());
        hasher.update([0u8]);
        for entry in &self.entries {
            hasher.update(entry.as_bytes());
            hasher.update(b"\n");
        }
    }
}

/// Loads a lexicon file (one entry per line, `#` comments, blank lines ignored).
pub fn load_lexicon(path: &Path, mode: MatchMode) -> Result<Lexicon> {
    Lexicon::load(path, mode)
}

/// True iff some token (or token sequence, in phrase mode) is a lexicon entry.
pub fn match_any(tokens: &[Token], lexicon: &Lexicon) -> bool {
    match lexicon.mode {
        MatchMode::Token => tokens
            .iter()
            .any(|t| t.kind == lexicon.target && lexicon.contains(&t.normalized)),
        MatchMode::StemmedToken => tokens
            .iter()
            .any(|t| t.kind == lexicon.target && lexicon.contains(&porter_stem(&t.normalized))),
        MatchMode::Phrase => {
            let units: Vec<&str> = tokens
                .iter()
                .filter(|t| !matches!(t.kind, TokenKind::Url | TokenKind::Punctuation))
                .map(|t| t.normalized.as_str())
                .collect();
            (1..=lexicon.max_phrase_len.min(units.len()))
                .any(|n| units.windows(n).any(|w| lexicon.contains(&w.join(" "))))
        }
    }
}

/// Stems of verb-tagged parse tokens that appear in a stemmed verb lexicon.
pub fn match_verbs(parse: Option<&DependencyParse>, verb_lexicon: &Lexicon) -> BTreeSet<String> {
    let Some(parse) = parse else {
        return BTreeSet::new();
    };
    parse
        .tokens()
        .iter()
        .filter(|t| t.pos == VERB_TAG)
        .map(|t| porter_stem(&t.form.to_lowercase()))
        .filter(|stem| verb_lexicon.contains(stem))
        .collect()
}

/// The five word lists used by the lexicon feature groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicons {
    pub opinion: Lexicon,
    pub vulgar: Lexicon,
    pub emoticons: Lexicon,
    pub speech_act_verbs: Lexicon,
    pub abbreviations: Lexicon,
}

impl Lexicons {
    pub const FILES: [&'static str; 5] = [
        "opinion.txt",
        "vulgar.txt",
        "emoticons.txt",
        "speech_act_verbs.txt",
        "abbreviations.txt",
    ];

    /// The lists shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_texts([
            BUNDLED_OPINION,
            BUNDLED_VULGAR,
            BUNDLED_EMOTICONS,
            BUNDLED_VERBS,
            BUNDLED_ABBREVIATIONS,
        ])
        .expect("bundled lexicons are valid")
    }

    fn from_texts(texts: [&str; 5]) -> Result<Self> {
        Ok(Lexicons {
            opinion: Lexicon::from_text("opinion", texts[0], MatchMode::Token)?,
            vulgar: Lexicon::from_text("vulgar", texts[1], MatchMode::Token)?,
            emoticons: Lexicon::emoticons_from_str("emoticons", texts[2])?,
            speech_act_verbs: Lexicon::from_text(
                "speech_act_verbs",
                texts[3],
                MatchMode::StemmedToken,
            )?,
            abbreviations: Lexicon::from_text("abbreviations", texts[4], MatchMode::Token)?,
        })
    }

    /// Loads the five files named in [`Lexicons::FILES`] from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut texts = Vec::with_capacity(5);
        for file in Self::FILES {
            let path = dir.join(file);
            texts.push(fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?);
        }
        Self::from_texts([&texts[0], &texts[1], &texts[2], &texts[3], &texts[4]])
    }

    /// Content hash over every normalized entry of every list.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for lexicon in [
            &self.opinion,
            &self.vulgar,
            &self.emoticons,
            &self.speech_act_verbs,
            &self.abbreviations,
        ] {
            lexicon.update_digest(&mut hasher);
        }
        hex::encode(hasher.finalize())
    }
}
