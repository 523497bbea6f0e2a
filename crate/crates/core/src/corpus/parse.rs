//! Dependency parses and the tab-separated parse sidecar format.
//!
//! A sidecar holds one block per tweet, separated by blank lines:
//!
//! ```text
//! # id = t1
//! 1	why	O	0
//! 2	?	,	1
//! ```
//!
//! Columns are `index`, `form`, `pos`, `head`; `head` is 0 for the root.

// The example above must keep its literal tabs.
#![allow(clippy::tabs_in_doc_comments)]

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// POS tag for verbs in the Twitter tagset.
pub const VERB_TAG: &str = "V";
pub const ADJECTIVE_TAG: &str = "A";
pub const INTERJECTION_TAG: &str = "!";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseToken {
    /// 1-based position.
    pub index: usize,
    pub form: String,
    pub pos: String,
    /// Governor index, 0 for the virtual root.
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DependencyParse {
    tokens: Vec<ParseToken>,
}

impl DependencyParse {
    /// Builds a parse, checking index contiguity, head range and acyclicity.
    pub fn new(tokens: Vec<ParseToken>) -> std::result::Result<Self, String> {
        let n = tokens.len();
        for (i, token) in tokens.iter().enumerate() {
            if token.index != i + 1 {
                return Err(format!(
                    "token indices must be 1-based and contiguous, found {} at position {}",
                    token.index,
                    i + 1
                ));
            }
            if token.pos.is_empty() {
                return Err(format!("token {} has an empty POS tag", token.index));
            }
            if token.form.is_empty() {
                return Err(format!("token {} has an empty form", token.index));
            }
            if token.head > n {
                return Err(format!(
                    "token {} has head {} outside [0, {}]",
                    token.index, token.head, n
                ));
            }
            if token.head == token.index {
                return Err(format!("token {} is its own head", token.index));
            }
        }
        let parse = DependencyParse { tokens };
        if let Some(index) = parse.find_cycle() {
            return Err(format!("head links from token {index} form a cycle"));
        }
        Ok(parse)
    }

    fn find_cycle(&self) -> Option<usize> {
        let n = self.tokens.len();
        for start in 1..=n {
            let mut current = start;
            let mut steps = 0;
            while current != 0 {
                current = self.tokens[current - 1].head;
                steps += 1;
                if steps > n {
                    return Some(start);
                }
            }
        }
        None
    }

    pub fn tokens(&self) -> &[ParseToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at a 1-based index.
    pub fn token(&self, index: usize) -> Option<&ParseToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    /// Children of each node; slot 0 holds the root's children.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.tokens.len() + 1];
        for token in &self.tokens {
            children[token.head].push(token.index);
        }
        children
    }

    pub fn has_pos(&self, tag: &str) -> bool {
        self.tokens.iter().any(|t| t.pos == tag)
    }
}

/// Reads a parse sidecar into `(tweet id, parse)` pairs in file order.
pub fn read_parses(path: &Path) -> Result<Vec<(String, DependencyParse)>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sidecar(&content, &path.display().to_string())
}

pub(crate) fn parse_sidecar(content: &str, file: &str) -> Result<Vec<(String, DependencyParse)>> {
    let malformed = |line: usize, message: String| Error::Malformed {
        file: file.to_string(),
        line,
        message,
    };

    let mut blocks = Vec::new();
    let mut current: Option<(String, usize, Vec<ParseToken>)> = None;

    let finish = |block: Option<(String, usize, Vec<ParseToken>)>,
                      blocks: &mut Vec<(String, DependencyParse)>|
     -> Result<()> {
        if let Some((id, _, tokens)) = block {
            let parse = DependencyParse::new(tokens)
                .map_err(|message| Error::InvalidParse { id: id.clone(), message })?;
            blocks.push((id, parse));
        }
        Ok(())
    };

    for (i, raw) in content.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            finish(current.take(), &mut blocks)?;
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(id) = rest.strip_prefix("id").map(str::trim_start) {
                if let Some(id) = id.strip_prefix('=') {
                    let id = id.trim();
                    if id.is_empty() {
                        return Err(malformed(line_no, "empty tweet id".into()));
                    }
                    finish(current.take(), &mut blocks)?;
                    current = Some((id.to_string(), line_no, Vec::new()));
                    continue;
                }
            }
            // other comment lines are ignored
            continue;
        }
        let Some((_, _, tokens)) = current.as_mut() else {
            return Err(malformed(line_no, "token line before any `# id = ...` header".into()));
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(malformed(
                line_no,
                format!("expected 4 tab-separated fields, found {}", fields.len()),
            ));
        }
        let index = fields[0]
            .parse::<usize>()
            .map_err(|_| malformed(line_no, format!("bad token index {:?}", fields[0])))?;
        let head = fields[3]
            .parse::<usize>()
            .map_err(|_| malformed(line_no, format!("bad head index {:?}", fields[3])))?;
        tokens.push(ParseToken {
            index,
            form: fields[1].to_string(),
            pos: fields[2].to_string(),
            head,
        });
    }
    finish(current.take(), &mut blocks)?;
    Ok(blocks)
}

/// Renders parses in sidecar format.
pub fn format_parses<'a>(parses: impl IntoIterator<Item = (&'a str, &'a DependencyParse)>) -> String {
    let mut out = String::new();
    let mut first = true;
    for (id, parse) in parses {
        if !first {
            out.push('\n');
        }
        first = false;
        let _ = writeln!(out, "# id = {id}");
        for t in parse.tokens() {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", t.index, t.form, t.pos, t.head);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(index: usize, form: &str, pos: &str, head: usize) -> ParseToken {
        ParseToken {
            index,
            form: form.into(),
            pos: pos.into(),
            head,
        }
    }

    #[test]
    fn rejects_cycles_and_bad_heads() {
        let cyclic = vec![tok(1, "a", "N", 2), tok(2, "b", "N", 1)];
        assert!(DependencyParse::new(cyclic).unwrap_err().contains("cycle"));

        let out_of_range = vec![tok(1, "a", "N", 5)];
        assert!(DependencyParse::new(out_of_range).is_err());

        let self_loop = vec![tok(1, "a", "N", 1)];
        assert!(DependencyParse::new(self_loop).is_err());

        let gap = vec![tok(1, "a", "N", 0), tok(3, "b", "N", 1)];
        assert!(DependencyParse::new(gap).is_err());
    }

    #[test]
    fn sidecar_blocks() {
        let text = "# id = t1\n1\twhy\tR\t0\n2\t?\t,\t1\n\n# id = t2\n1\tok\t!\t0\n";
        let blocks = parse_sidecar(text, "x").unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].0, "t1");
        assert_eq!(blocks[0].1.len(), 2);
        assert_eq!(blocks[1].1.tokens()[0].pos, "!");
        let rendered = format_parses(blocks.iter().map(|(id, p)| (id.as_str(), p)));
        assert_eq!(rendered, text);
    }

    #[test]
    fn sidecar_errors_carry_line_numbers() {
        let err = parse_sidecar("# id = t1\n1\twhy\tR\n", "f.conll").unwrap_err();
        assert!(err.to_string().starts_with("f.conll:2:"), "{err}");

        let err = parse_sidecar("1\twhy\tR\t0\n", "f").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));

        let err = parse_sidecar("# id = t1\n1\ta\tN\t2\n2\tb\tN\t1\n", "f").unwrap_err();
        assert!(matches!(err, Error::InvalidParse { .. }));
    }
}
