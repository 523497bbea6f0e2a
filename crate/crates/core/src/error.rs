use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: {message}")]
    Malformed {
        file: String,
        line: usize,
        message: String,
    },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("duplicate tweet id {0:?}")]
    DuplicateId(String),

    #[error("parse block references unknown tweet id {0:?}")]
    UnknownParseId(String),

    #[error("invalid dependency parse for {id:?}: {message}")]
    InvalidParse { id: String, message: String },

    #[error("unknown speech act label {0:?}")]
    UnknownLabel(String),

    #[error("unknown topic type {0:?}")]
    UnknownTopicType(String),

    #[error("tweet {0:?} has no label")]
    Unlabeled(String),

    #[error("lexicon {0:?} is empty after normalization")]
    EmptyLexicon(String),

    #[error("feature vocabulary has no columns")]
    EmptyVocabulary,

    #[error("vocabulary fingerprint mismatch: model expects {expected}, got {actual}")]
    FingerprintMismatch { expected: String, actual: String },

    #[error("dimension mismatch: model expects {expected}, vector has {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("format error: {0}")]
    Format(String),

    #[error("training diverged: non-finite loss {0}")]
    NonFiniteLoss(f64),

    #[error("corpus has {size} tweets, fewer than k = {k} folds")]
    TooFewForFolds { size: usize, k: usize },

    #[error("every partition was smaller than k = {0}")]
    AllPartitionsSkipped(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the numerical routines rather than of the input data.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFiniteLoss(_))
    }
}
