//! Tweet tokenization, Porter stemming and lexicon matching.

mod lexicon;
mod porter;
mod tokenize;

pub use lexicon::{load_lexicon, match_any, match_verbs, Lexicon, Lexicons, MatchMode};
pub use porter::porter_stem;
pub use tokenize::{tokenize, Token, TokenKind, Tokenizer};
