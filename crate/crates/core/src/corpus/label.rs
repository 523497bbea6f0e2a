use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The six tweet-level speech acts. Discriminants are the stable class codes
/// used for weight indexing and tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SpeechAct {
    Assertion = 0,
    Recommendation = 1,
    Expression = 2,
    Question = 3,
    Request = 4,
    Miscellaneous = 5,
}

pub const NUM_CLASSES: usize = 6;

impl SpeechAct {
    pub const ALL: [SpeechAct; NUM_CLASSES] = [
        SpeechAct::Assertion,
        SpeechAct::Recommendation,
        SpeechAct::Expression,
        SpeechAct::Question,
        SpeechAct::Request,
        SpeechAct::Miscellaneous,
    ];

    /// Column order used in result tables: As, Ex, Qu, Rc, Rq, Mis.
    pub const REPORT_ORDER: [SpeechAct; NUM_CLASSES] = [
        SpeechAct::Assertion,
        SpeechAct::Expression,
        SpeechAct::Question,
        SpeechAct::Recommendation,
        SpeechAct::Request,
        SpeechAct::Miscellaneous,
    ];

    pub fn code(self) -> usize {
        self as usize
    }

    pub fn from_code(code: usize) -> Option<SpeechAct> {
        Self::ALL.get(code).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            SpeechAct::Assertion => "assertion",
            SpeechAct::Recommendation => "recommendation",
            SpeechAct::Expression => "expression",
            SpeechAct::Question => "question",
            SpeechAct::Request => "request",
            SpeechAct::Miscellaneous => "miscellaneous",
        }
    }

    /// Three-letter code (asr, rec, exp, que, req, mis).
    pub fn short(self) -> &'static str {
        match self {
            SpeechAct::Assertion => "asr",
            SpeechAct::Recommendation => "rec",
            SpeechAct::Expression => "exp",
            SpeechAct::Question => "que",
            SpeechAct::Request => "req",
            SpeechAct::Miscellaneous => "mis",
        }
    }

    /// Column heading in result tables.
    pub fn column(self) -> &'static str {
        match self {
            SpeechAct::Assertion => "As",
            SpeechAct::Recommendation => "Rc",
            SpeechAct::Expression => "Ex",
            SpeechAct::Question => "Qu",
            SpeechAct::Request => "Rq",
            SpeechAct::Miscellaneous => "Mis",
        }
    }
}

impl fmt::Display for SpeechAct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpeechAct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded = s.trim().to_lowercase();
        SpeechAct::ALL
            .into_iter()
            .find(|act| act.name() == folded || act.short() == folded)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl TryFrom<String> for SpeechAct {
    type Error = Error;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<SpeechAct> for String {
    fn from(act: SpeechAct) -> String {
        act.name().to_string()
    }
}

/// Nature of a topic: entity-oriented, event-oriented or long-standing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TopicType {
    Entity,
    Event,
    LongStanding,
}

impl TopicType {
    pub const ALL: [TopicType; 3] = [TopicType::Entity, TopicType::Event, TopicType::LongStanding];

    pub fn name(self) -> &'static str {
        match self {
            TopicType::Entity => "entity",
            TopicType::Event => "event",
            TopicType::LongStanding => "longstanding",
        }
    }
}

impl fmt::Display for TopicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopicType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded: String = s
            .trim()
            .to_lowercase()
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' '))
            .collect();
        match folded.as_str() {
            "entity" | "entityoriented" => Ok(TopicType::Entity),
            "event" | "eventoriented" => Ok(TopicType::Event),
            "longstanding" => Ok(TopicType::LongStanding),
            _ => Err(Error::UnknownTopicType(s.to_string())),
        }
    }
}

impl TryFrom<String> for TopicType {
    type Error = Error;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<TopicType> for String {
    fn from(t: TopicType) -> String {
        t.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_declaration_order() {
        for (i, act) in SpeechAct::ALL.iter().enumerate() {
            assert_eq!(act.code(), i);
            assert_eq!(SpeechAct::from_code(i), Some(*act));
        }
        assert_eq!(SpeechAct::from_code(6), None);
    }

    #[test]
    fn labels_parse_case_insensitively_with_aliases() {
        assert_eq!("Question".parse::<SpeechAct>().unwrap(), SpeechAct::Question);
        assert_eq!("QUE".parse::<SpeechAct>().unwrap(), SpeechAct::Question);
        assert_eq!("asr".parse::<SpeechAct>().unwrap(), SpeechAct::Assertion);
        assert_eq!("Mis".parse::<SpeechAct>().unwrap(), SpeechAct::Miscellaneous);
        assert!(matches!(
            "statement".parse::<SpeechAct>(),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn topic_type_spellings() {
        assert_eq!("long-standing".parse::<TopicType>().unwrap(), TopicType::LongStanding);
        assert_eq!("LongStanding".parse::<TopicType>().unwrap(), TopicType::LongStanding);
        assert_eq!("Entity".parse::<TopicType>().unwrap(), TopicType::Entity);
        assert!("topic".parse::<TopicType>().is_err());
    }
}
