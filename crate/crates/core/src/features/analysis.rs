use std::collections::BTreeSet;

use crate::corpus::{Tweet, ADJECTIVE_TAG, INTERJECTION_TAG};
use crate::text::{match_any, match_verbs, Lexicons, Token, TokenKind, Tokenizer};

use super::subtree::extract_subtrees;

/// Everything vectorization needs from one tweet, computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct TweetAnalysis {
    pub tokens: Vec<Token>,
    /// Distinct 1..=n_max-grams over n-gram units, space-joined.
    pub ngrams: BTreeSet<String>,
    /// Distinct canonical sub-tree keys (empty without a parse).
    pub subtrees: BTreeSet<String>,
    /// Speech-act verb stems found among verb-tagged parse tokens.
    pub verbs: BTreeSet<String>,
    pub opinion: bool,
    pub vulgar: bool,
    pub emoticon: bool,
    pub abbreviation: bool,
    pub question_mark: bool,
    pub exclamation_mark: bool,
    pub has_hashtag: bool,
    pub has_mention: bool,
    pub has_rt: bool,
    pub initial_hashtag: bool,
    pub initial_mention: bool,
    pub initial_rt: bool,
    pub adjective: bool,
    pub interjection: bool,
    pub has_parse: bool,
}

/// Token kinds that take part in n-grams. URLs, punctuation and emoticons do not.
pub fn is_ngram_unit(kind: TokenKind) -> bool {
    matches!(
        kind,
        TokenKind::Word
            | TokenKind::Number
            | TokenKind::Hashtag
            | TokenKind::Mention
            | TokenKind::RtMarker
    )
}

/// All distinct n-grams of length 1..=n_max over a tweet's n-gram units.
pub fn tweet_ngrams(tokens: &[Token], n_max: usize) -> BTreeSet<String> {
    let units: Vec<&str> = tokens
        .iter()
        .filter(|t| is_ngram_unit(t.kind))
        .map(|t| t.normalized.as_str())
        .collect();
    let mut grams = BTreeSet::new();
    for n in 1..=n_max.min(units.len()) {
        for window in units.windows(n) {
            grams.insert(window.join(" "));
        }
    }
    grams
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzerConfig {
    pub n_max: usize,
    pub include_siblings: bool,
}

impl Default for AnalyzerConfig {
    fn default() -> Self {
        AnalyzerConfig {
            n_max: 3,
            include_siblings: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analyzer {
    lexicons: Lexicons,
    tokenizer: Tokenizer,
    config: AnalyzerConfig,
}

impl Analyzer {
    pub fn new(lexicons: Lexicons, config: AnalyzerConfig) -> Self {
        let tokenizer = Tokenizer::with_emoticons(&lexicons.emoticons);
        Analyzer {
            lexicons,
            tokenizer,
            config,
        }
    }

    pub fn lexicons(&self) -> &Lexicons {
        &self.lexicons
    }

    pub fn config(&self) -> AnalyzerConfig {
        self.config
    }

    pub fn tokenizer(&self) -> &Tokenizer {
        &self.tokenizer
    }

    pub fn analyze(&self, tweet: &Tweet) -> TweetAnalysis {
        let tokens = self.tokenizer.tokenize(&tweet.text);
        let lex = &self.lexicons;
        let first = tokens.first().map(|t| t.kind);
        let has_kind = |kind| tokens.iter().any(|t: &Token| t.kind == kind);
        let parse = tweet.parse.as_ref();

        TweetAnalysis {
            ngrams: tweet_ngrams(&tokens, self.config.n_max),
            subtrees: parse
                .map(|p| {
                    extract_subtrees(p, self.config.include_siblings)
                        .into_iter()
                        .map(|k| k.into_string())
                        .collect()
                })
                .unwrap_or_default(),
            verbs: match_verbs(parse, &lex.speech_act_verbs),
            opinion: match_any(&tokens, &lex.opinion),
            vulgar: match_any(&tokens, &lex.vulgar),
            emoticon: match_any(&tokens, &lex.emoticons),
            abbreviation: match_any(&tokens, &lex.abbreviations),
            question_mark: tweet.text.contains('?'),
            exclamation_mark: tweet.text.contains('!'),
            has_hashtag: has_kind(TokenKind::Hashtag),
            has_mention: has_kind(TokenKind::Mention),
            has_rt: has_kind(TokenKind::RtMarker),
            initial_hashtag: first == Some(TokenKind::Hashtag),
            initial_mention: first == Some(TokenKind::Mention),
            initial_rt: first == Some(TokenKind::RtMarker),
            adjective: parse.is_some_and(|p| p.has_pos(ADJECTIVE_TAG)),
            interjection: parse.is_some_and(|p| p.has_pos(INTERJECTION_TAG)),
            has_parse: parse.is_some(),
            tokens,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;

    #[test]
    fn ngrams_skip_urls_and_punctuation() {
        let grams = tweet_ngrams(&tokenize("I think so! http://x.co/a"), 3);
        let expected: BTreeSet<String> = ["i", "think", "so", "i think", "think so", "i think so"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(grams, expected);
    }

    #[test]
    fn ngrams_keep_hashtags_and_mentions() {
        let grams = tweet_ngrams(&tokenize("go @sox #win"), 2);
        assert!(grams.contains("@sox #win"));
        assert!(grams.contains("go @sox"));
    }
}
