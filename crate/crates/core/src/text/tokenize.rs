use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::lexicon::{Lexicon, BUNDLED_EMOTICONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    Hashtag,
    Mention,
    Url,
    Emoticon,
    Punctuation,
    RtMarker,
    Number,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TokenKind::Word => "word",
            TokenKind::Hashtag => "hashtag",
            TokenKind::Mention => "mention",
            TokenKind::Url => "url",
            TokenKind::Emoticon => "emoticon",
            TokenKind::Punctuation => "punctuation",
            TokenKind::RtMarker => "rt_marker",
            TokenKind::Number => "number",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// Original text, case preserved.
    pub surface: String,
    /// Case-folded surface; all matching happens on this form.
    pub normalized: String,
    pub kind: TokenKind,
}

impl Token {
    fn new(surface: &str, kind: TokenKind) -> Self {
        Token {
            surface: surface.to_string(),
            normalized: surface.to_lowercase(),
            kind,
        }
    }
}

struct Patterns {
    url: Regex,
    mention: Regex,
    hashtag: Regex,
    number: Regex,
    word: Regex,
}

fn patterns() -> &'static Patterns {
    static PATTERNS: OnceLock<Patterns> = OnceLock::new();
    PATTERNS.get_or_init(|| Patterns {
        url: Regex::new(r"^(?i:https?://|www\.)\S+").unwrap(),
        mention: Regex::new(r"^@[\p{L}\p{N}_]+").unwrap(),
        hashtag: Regex::new(r"^#[\p{L}\p{N}_]+").unwrap(),
        number: Regex::new(r"^\p{Nd}+(?:[.,:]\p{Nd}+)*").unwrap(),
        word: Regex::new(r"^[\p{L}\p{N}_]+(?:['’][\p{L}\p{N}_]+)*").unwrap(),
    })
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Rule-based tweet tokenizer. Rules are tried in the order
/// URL, emoticon, mention, hashtag, RT marker, number, word, punctuation.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    emoticons: HashSet<String>,
    max_emoticon_chars: usize,
}

impl Default for Tokenizer {
    fn default() -> Self {
        default_tokenizer().clone()
    }
}

fn default_tokenizer() -> &'static Tokenizer {
    static DEFAULT: OnceLock<Tokenizer> = OnceLock::new();
    DEFAULT.get_or_init(|| {
        let lexicon = Lexicon::emoticons_from_str("emoticons", BUNDLED_EMOTICONS)
            .expect("bundled emoticon list is valid");
        Tokenizer::with_emoticons(&lexicon)
    })
}

/// Tokenizes with the bundled emoticon list.
pub fn tokenize(text: &str) -> Vec<Token> {
    default_tokenizer().tokenize(text)
}

impl Tokenizer {
    /// A tokenizer that keeps the entries of `emoticons` as single tokens.
    pub fn with_emoticons(emoticons: &Lexicon) -> Self {
        let emoticons: HashSet<String> = emoticons
            .entries()
            .filter(|e| e.chars().count() >= 2 && !e.chars().any(char::is_whitespace))
            .map(str::to_string)
            .collect();
        let max_emoticon_chars = emoticons.iter().map(|e| e.chars().count()).max().unwrap_or(0);
        Tokenizer {
            emoticons,
            max_emoticon_chars,
        }
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let p = patterns();
        let mut tokens = Vec::new();
        let mut pos = 0;
        while pos < text.len() {
            let rest = &text[pos..];
            let Some(first) = rest.chars().next() else { break };
            if first.is_whitespace() {
                pos += first.len_utf8();
                continue;
            }
            let after_space = text[..pos]
                .chars()
                .next_back()
                .is_none_or(char::is_whitespace);

            let (len, kind) = if let Some(m) = p.url.find(rest) {
                let url = m.as_str().trim_end_matches(|c: char| ".,!?;:'\")]".contains(c));
                let bare_scheme = ["http://", "https://", "www"]
                    .iter()
                    .any(|s| url.eq_ignore_ascii_case(s));
                if !bare_scheme {
                    (url.len(), TokenKind::Url)
                } else {
                    self.rest_rules(rest, after_space)
                }
            } else {
                self.rest_rules(rest, after_space)
            };
            tokens.push(Token::new(&rest[..len], kind));
            pos += len;
        }
        tokens
    }

    fn rest_rules(&self, rest: &str, after_space: bool) -> (usize, TokenKind) {
        let p = patterns();
        if let Some(len) = self.match_emoticon(rest, after_space) {
            return (len, TokenKind::Emoticon);
        }
        if let Some(m) = p.mention.find(rest) {
            return (m.end(), TokenKind::Mention);
        }
        if let Some(m) = p.hashtag.find(rest) {
            return (m.end(), TokenKind::Hashtag);
        }
        if let Some(len) = match_rt_marker(rest) {
            return (len, TokenKind::RtMarker);
        }
        if let Some(m) = p.number.find(rest) {
            let next = rest[m.end()..].chars().next();
            if !next.is_some_and(is_word_char) {
                return (m.end(), TokenKind::Number);
            }
        }
        if let Some(m) = p.word.find(rest) {
            return (m.end(), TokenKind::Word);
        }
        let c = rest.chars().next().expect("non-empty");
        (c.len_utf8(), TokenKind::Punctuation)
    }

    /// Longest emoticon at the start of `rest` that is followed by whitespace
    /// or the end of text. Emoticons starting with a letter or digit must also
    /// be preceded by whitespace.
    fn match_emoticon(&self, rest: &str, after_space: bool) -> Option<usize> {
        if self.emoticons.is_empty() {
            return None;
        }
        let ends: Vec<usize> = rest
            .char_indices()
            .skip(1)
            .map(|(i, _)| i)
            .chain(std::iter::once(rest.len()))
            .take(self.max_emoticon_chars)
            .collect();
        for (n_chars, &end) in ends.iter().enumerate().rev() {
            if n_chars + 1 < 2 {
                break;
            }
            let candidate = &rest[..end];
            let boundary = rest[end..].chars().next().is_none_or(char::is_whitespace);
            if !boundary {
                continue;
            }
            if candidate.starts_with(is_word_char) && !after_space {
                continue;
            }
            if self.emoticons.contains(&candidate.to_lowercase()) {
                return Some(end);
            }
        }
        None
    }
}

/// `RT` in any case, followed by whitespace and then a mention.
fn match_rt_marker(rest: &str) -> Option<usize> {
    let head = rest.get(..2)?;
    if !head.eq_ignore_ascii_case("rt") {
        return None;
    }
    let tail = &rest[2..];
    let trimmed = tail.trim_start();
    if trimmed.len() == tail.len() {
        return None;
    }
    let mut chars = trimmed.chars();
    (chars.next() == Some('@') && chars.next().is_some_and(is_word_char)).then_some(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<(String, TokenKind)> {
        tokenize(text).into_iter().map(|t| (t.surface, t.kind)).collect()
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   \t\n").is_empty());
    }

    #[test]
    fn retweet_prefix() {
        let tokens = tokenize("rt @craigyh999: 3 days until i run the london marathon");
        assert_eq!(tokens[0].kind, TokenKind::RtMarker);
        assert_eq!(tokens[0].normalized, "rt");
        assert_eq!(tokens[1].kind, TokenKind::Mention);
        assert_eq!(tokens[1].surface, "@craigyh999");
        assert_eq!(tokens[2].kind, TokenKind::Punctuation);
        assert_eq!(tokens[3].kind, TokenKind::Number);
        assert!(tokens[4..].iter().all(|t| t.kind == TokenKind::Word));
    }

    #[test]
    fn question_with_mention_and_hashtag() {
        let tokens = tokenize("Anybody hear if @gehrig38 is well enough to attend tonight? #redsox");
        let punct: Vec<&Token> = tokens.iter().filter(|t| t.kind == TokenKind::Punctuation).collect();
        assert_eq!(punct.len(), 1);
        assert_eq!(punct[0].surface, "?");
        let tags: Vec<&Token> = tokens.iter().filter(|t| t.kind == TokenKind::Hashtag).collect();
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].surface, "#redsox");
        assert_eq!(tokens.iter().filter(|t| t.kind == TokenKind::Mention).count(), 1);
        assert_eq!(tokens[0].surface, "Anybody");
        assert_eq!(tokens[0].normalized, "anybody");
    }

    #[test]
    fn urls_and_emoticons() {
        let k = kinds("so cute :) see http://t.co/abc123. ok :-D");
        assert!(k.contains(&(":)".into(), TokenKind::Emoticon)));
        assert!(k.contains(&(":-D".into(), TokenKind::Emoticon)));
        assert!(k.contains(&("http://t.co/abc123".into(), TokenKind::Url)));
        assert!(k.contains(&(".".into(), TokenKind::Punctuation)));
    }

    #[test]
    fn emoticon_needs_boundary() {
        let k = kinds("(8)");
        assert_eq!(
            k,
            vec![
                ("(".into(), TokenKind::Punctuation),
                ("8".into(), TokenKind::Number),
                (")".into(), TokenKind::Punctuation)
            ]
        );
        let k = kinds("great:)");
        assert_eq!(k[1], (":)".into(), TokenKind::Emoticon));
    }

    #[test]
    fn rt_only_before_mention() {
        assert_eq!(kinds("RT @x hi")[0].1, TokenKind::RtMarker);
        assert_eq!(kinds("rt this")[0].1, TokenKind::Word);
        assert_eq!(kinds("art @x")[0].1, TokenKind::Word);
    }

    #[test]
    fn words_numbers_and_marks() {
        let k = kinds("We'll post b4 3:30, ok?!");
        assert_eq!(k[0], ("We'll".into(), TokenKind::Word));
        assert_eq!(k[2], ("b4".into(), TokenKind::Word));
        assert_eq!(k[3], ("3:30".into(), TokenKind::Number));
        assert_eq!(k[6], ("?".into(), TokenKind::Punctuation));
        assert_eq!(k[7], ("!".into(), TokenKind::Punctuation));
    }
}
