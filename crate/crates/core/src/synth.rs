//! Deterministic labeled stand-in corpora with dependency parses.
//!
//! Tweet `i` gets class `i % 6` and topic `(i / 6 + i) % 6`, so a corpus of
//! 600 has exactly 100 tweets per class and per topic. Each tweet carries the
//! cues of its class through one or both of two channels:
//!
//! * lexical cues (reporting verbs, "you should", opinion words, wh-words,
//!   "please" plus a verb), seen only by semantic features;
//! * surface cues (an adjective tag, an initial hashtag, `!`, `?`, an initial
//!   mention), seen only by syntactic features.
//!
//! Miscellaneous tweets are filler only. Cue tokens are parsed as isolated
//! roots so they never enter sub-trees; filler words form a random tree.
//!
//! In topic-rotated mode the cue set used for class `c` in topic `t` is that of
//! class `(c + t) % 6`, so the same cue means a different class in every topic.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{
    format_parses, write_file, Corpus, DependencyParse, ParseToken, SpeechAct, TopicType, Tweet,
    NUM_CLASSES,
};
use crate::error::{Error, Result};
use crate::features::Blocklist;

pub const MIN_SIZE: usize = 120;

pub const TOPICS: [(&str, TopicType); 6] = [
    ("ashton", TopicType::Entity),
    ("redsox", TopicType::Entity),
    ("boston", TopicType::Event),
    ("ferguson", TopicType::Event),
    ("cooking", TopicType::LongStanding),
    ("fitness", TopicType::LongStanding),
];

const FILLER: &[&str] = &[
    "table", "window", "street", "game", "morning", "team", "city", "bus", "coffee", "river",
    "garden", "station", "paper", "letter", "road", "bridge", "market", "school", "field",
    "corner", "jacket", "photo", "movie", "ticket", "record", "season", "player", "coach",
    "stadium", "kitchen", "dinner", "lunch", "recipe", "oven", "bread", "pasta", "salad", "soup",
    "gym", "weights", "runner", "trail", "bike", "helmet", "music", "radio", "channel", "video",
    "phone", "laptop", "screen", "battery", "cable", "shelf", "desk", "lamp", "chair", "door",
    "floor", "wall", "roof", "garage", "truck", "train", "airport", "flight", "hotel", "lobby",
    "beach", "island", "harbor", "boat", "engine", "wheel", "tire", "mirror", "bottle", "glass",
    "plate", "spoon", "fork", "basket", "box", "bag", "wallet", "card", "coin", "office",
    "meeting", "summer", "winter", "autumn", "weekend", "monday", "friday", "tonight",
    "yesterday", "tomorrow", "news", "crowd", "parade", "poster", "flag", "banner", "podium",
    "mayor", "council", "court", "lawyer", "officer", "camera", "reporter", "studio", "anchor",
    "stage", "concert", "jersey", "glove", "inning", "pitcher", "catcher", "dugout", "bullpen",
    "marathon", "medal", "route", "mile", "lap", "sprint", "protein", "tofu", "grill", "sauce",
    "pepper", "onion", "garlic", "tomato", "carrot", "potato", "rice", "noodle", "butter",
    "cheese", "milk", "flour", "dough", "pizza", "burger", "taco",
];

const FILLER_TAGS: [&str; 4] = ["N", "N", "^", "D"];

const REPORTING: &[&str] = &[
    "says", "reports", "reported", "announces", "announced", "confirms", "confirmed", "claims",
    "states", "reveals", "revealed", "declares",
];
const ADVISING: &[&str] = &["recommend", "suggest", "advise", "urge"];
const OPINION: &[&str] = &[
    "love", "awesome", "great", "terrible", "amazing", "happy", "sad", "horrible", "excited",
    "angry",
];
const EMOTICONS: &[&str] = &[":)", ":D", ":(", "<3", ";)"];
const WH: &[&str] = &["why", "how", "what", "who", "where", "when"];
const REQUESTING: &[&str] = &["help", "share", "send", "retweet", "join", "donate"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    pub size: usize,
    pub seed: u64,
    /// Rotate the class meaning of every cue by topic.
    pub topic_rotated: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            size: 600,
            seed: 42,
            topic_rotated: false,
        }
    }
}

/// Which cue channels a tweet carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Channels {
    Lexical,
    Surface,
    Both,
}

impl Channels {
    fn lexical(self) -> bool {
        self != Channels::Surface
    }

    fn surface(self) -> bool {
        self != Channels::Lexical
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Attach {
    /// Head 0 with no dependents.
    Isolated,
    /// Part of the filler tree.
    Filler,
}

struct Piece {
    form: String,
    pos: &'static str,
    attach: Attach,
}

impl Piece {
    fn cue(form: impl Into<String>, pos: &'static str) -> Self {
        Piece {
            form: form.into(),
            pos,
            attach: Attach::Isolated,
        }
    }

    fn filler(form: impl Into<String>, pos: &'static str) -> Self {
        Piece {
            form: form.into(),
            pos,
            attach: Attach::Filler,
        }
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, items: &[&'a str]) -> &'a str {
    items.choose(rng).expect("non-empty list")
}

fn lexical_cue(class: SpeechAct, rng: &mut ChaCha8Rng) -> Vec<Piece> {
    use SpeechAct::*;
    let mut out = Vec::new();
    match class {
        Assertion => {
            out.push(Piece::cue(pick(rng, REPORTING), "V"));
            out.push(Piece::cue("that", "P"));
        }
        Recommendation => {
            out.push(Piece::cue("you", "O"));
            out.push(Piece::cue("should", "V"));
            out.push(Piece::cue(pick(rng, ADVISING), "V"));
        }
        Expression => {
            if rng.gen_bool(0.5) {
                out.push(Piece::cue("so", "R"));
            }
            out.push(Piece::cue(pick(rng, OPINION), "N"));
        }
        Question => {
            out.push(Piece::cue(pick(rng, WH), "O"));
            if rng.gen_bool(0.5) {
                out.extend([Piece::cue("do", "V"), Piece::cue("you", "O")]);
            } else {
                out.push(Piece::cue("is", "V"));
            }
        }
        Request => {
            out.push(Piece::cue("please", "R"));
            out.push(Piece::cue(pick(rng, REQUESTING), "V"));
        }
        Miscellaneous => {}
    }
    out
}

fn tweet_pieces(class: SpeechAct, topic: &str, channels: Channels, rng: &mut ChaCha8Rng) -> Vec<Piece> {
    use SpeechAct::*;
    let filler_count = rng.gen_range(4..=8);
    let mut body: Vec<Piece> = (0..filler_count)
        .map(|_| Piece::filler(pick(rng, FILLER), FILLER_TAGS[rng.gen_range(0..FILLER_TAGS.len())]))
        .collect();
    let at = rng.gen_range(0..=body.len());
    body.insert(at, Piece::filler(topic, "^"));
    if channels.surface() && class == Assertion {
        let at = rng.gen_range(1..=body.len());
        body.insert(at, Piece::filler(pick(rng, FILLER), "A"));
    }
    if channels.lexical() {
        let at = rng.gen_range(0..=body.len());
        let cue = lexical_cue(class, rng);
        body.splice(at..at, cue);
        if class == Expression && rng.gen_bool(0.5) {
            body.push(Piece::cue(pick(rng, EMOTICONS), "E"));
        }
    }

    let mut pieces = Vec::new();
    if channels.surface() {
        match class {
            Recommendation => pieces.push(Piece::cue(format!("#{}", pick(rng, FILLER)), "#")),
            Request => pieces.push(Piece::cue(
                format!("@{}_{}", pick(rng, FILLER), rng.gen_range(1..100)),
                "@",
            )),
            _ => {}
        }
    }
    pieces.extend(body);
    if channels.surface() {
        match class {
            Expression => pieces.push(Piece::cue("!", ",")),
            Question => pieces.push(Piece::cue("?", ",")),
            _ => {}
        }
    }
    pieces
}

fn parse_of(pieces: &[Piece], rng: &mut ChaCha8Rng) -> Result<DependencyParse> {
    let mut tokens = Vec::with_capacity(pieces.len());
    let mut filler_nodes: Vec<usize> = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let index = i + 1;
        let head = match piece.attach {
            Attach::Isolated => 0,
            Attach::Filler => {
                let head = if filler_nodes.is_empty() {
                    0
                } else {
                    filler_nodes[rng.gen_range(0..filler_nodes.len())]
                };
                filler_nodes.push(index);
                head
            }
        };
        tokens.push(ParseToken {
            index,
            form: piece.form.clone(),
            pos: piece.pos.to_string(),
            head,
        });
    }
    DependencyParse::new(tokens).map_err(|message| Error::InvalidParse {
        id: "synthetic".into(),
        message,
    })
}

/// Generates a corpus with attached parses.
pub fn generate(config: &SynthConfig) -> Result<Corpus> {
    if config.size < MIN_SIZE {
        return Err(Error::InvalidArgument(format!(
            "synthetic corpus size must be at least {MIN_SIZE}, got {}",
            config.size
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tweets = Vec::with_capacity(config.size);
    for i in 0..config.size {
        let class = SpeechAct::ALL[i % NUM_CLASSES];
        let t = (i / NUM_CLASSES + i) % TOPICS.len();
        let (topic, topic_type) = TOPICS[t];
        let channels = match (i / NUM_CLASSES) % 3 {
            0 => Channels::Both,
            1 => Channels::Lexical,
            _ => Channels::Surface,
        };
        let cue_class = if config.topic_rotated {
            SpeechAct::ALL[(class.code() + t) % NUM_CLASSES]
        } else {
            class
        };
        let pieces = tweet_pieces(cue_class, topic, channels, &mut rng);
        let parse = parse_of(&pieces, &mut rng)?;
        let text = pieces
            .iter()
            .map(|p| p.form.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        tweets.push(Tweet {
            id: format!("syn{i:05}"),
            text,
            topic: topic.to_string(),
            topic_type,
            label: Some(class),
            parse: Some(parse),
        });
    }
    Corpus::new(tweets)
}

/// Topic terms of the generated corpora, in blocklist file form.
pub fn blocklist_text() -> String {
    let mut out = String::from("# topic terms of the synthetic corpus\n");
    for (topic, _) in TOPICS {
        out.push_str(topic);
        out.push('\n');
    }
    out
}

pub fn blocklist() -> Blocklist {
    Blocklist::from_text(&blocklist_text())
}

pub const CORPUS_FILE: &str = "corpus.jsonl";
pub const PARSES_FILE: &str = "parses.conll";
pub const BLOCKLIST_FILE: &str = "blocklist.txt";

/// Writes the corpus, its parse sidecar and the topic blocklist into `dir`.
pub fn write_synth(corpus: &Corpus, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    corpus.save(&dir.join(CORPUS_FILE))?;
    let parses = format_parses(
        corpus
            .iter()
            .filter_map(|t| t.parse.as_ref().map(|p| (t.id.as_str(), p))),
    );
    write_file(&dir.join(PARSES_FILE), parses.as_bytes())?;
    write_file(&dir.join(BLOCKLIST_FILE), blocklist_text().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::class_distribution;
    use crate::text::{porter_stem, tokenize, Lexicons};
    use std::collections::BTreeMap;

    #[test]
    fn exact_class_and_topic_counts() {
        let c = generate(&SynthConfig {
            size: 600,
            seed: 7,
            topic_rotated: false,
        })
        .unwrap();
        let mut topics: BTreeMap<&str, usize> = BTreeMap::new();
        for t in &c {
            *topics.entry(t.topic.as_str()).or_default() += 1;
        }
        assert!(topics.values().all(|&n| n == 100));
        for (_, p) in class_distribution(&c).unwrap() {
            assert!((p - 1.0 / 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn too_small_is_rejected() {
        let config = SynthConfig {
            size: 119,
            ..Default::default()
        };
        assert!(generate(&config).is_err());
    }

    #[test]
    fn parses_align_with_tokens() {
        let c = generate(&SynthConfig::default()).unwrap();
        for t in &c {
            let forms: Vec<String> = tokenize(&t.text).into_iter().map(|k| k.surface).collect();
            let parse: Vec<&str> = t.parse.as_ref().unwrap().tokens().iter().map(|p| p.form.as_str()).collect();
            assert_eq!(forms, parse, "{}", t.text);
        }
    }

    #[test]
    fn cue_words_sit_in_the_intended_lexicons() {
        let lex = Lexicons::bundled();
        for w in REPORTING.iter().chain(ADVISING) {
            assert!(lex.speech_act_verbs.contains(&porter_stem(w)), "{w}");
        }
        assert!(OPINION.iter().all(|w| lex.opinion.contains(w)));
        assert!(EMOTICONS.iter().all(|w| lex.emoticons.contains(&w.to_lowercase())));
        for w in FILLER {
            assert!(!lex.opinion.contains(w) && !lex.vulgar.contains(w) && !lex.abbreviations.contains(w), "{w}");
        }
    }
}
