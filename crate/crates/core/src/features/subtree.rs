//! One- and two-edge dependency sub-trees.
//!
//! Canonical keys, with case-folded word forms:
//!
//! * one edge: `head>child`
//! * chain: `grandparent>parent>child`
//! * siblings: `head>{left,right}` with the two children sorted
//!
//! Edges to the virtual root are never part of a sub-tree.

use std::collections::BTreeSet;
use std::fmt;

use crate::corpus::DependencyParse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubtreeShape {
    Edge,
    Chain,
    Siblings,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubtreeKey {
    key: String,
    shape: SubtreeShape,
}

impl SubtreeKey {
    pub fn edge(head: &str, child: &str) -> Self {
        SubtreeKey {
            key: format!("{}>{}", head.to_lowercase(), child.to_lowercase()),
            shape: SubtreeShape::Edge,
        }
    }

    pub fn chain(top: &str, middle: &str, bottom: &str) -> Self {
        SubtreeKey {
            key: format!(
                "{}>{}>{}",
                top.to_lowercase(),
                middle.to_lowercase(),
                bottom.to_lowercase()
            ),
            shape: SubtreeShape::Chain,
        }
    }

    pub fn siblings(head: &str, a: &str, b: &str) -> Self {
        let (a, b) = (a.to_lowercase(), b.to_lowercase());
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        SubtreeKey {
            key: format!("{}>{{{},{}}}", head.to_lowercase(), first, second),
            shape: SubtreeShape::Siblings,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }

    pub fn shape(&self) -> SubtreeShape {
        self.shape
    }

    pub fn into_string(self) -> String {
        self.key
    }
}

impl fmt::Display for SubtreeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Every distinct sub-tree of one or two edges. Sibling pairs are included
/// only when `include_siblings` is set.
pub fn extract_subtrees(parse: &DependencyParse, include_siblings: bool) -> BTreeSet<SubtreeKey> {
    let tokens = parse.tokens();
    let form = |index: usize| tokens[index - 1].form.as_str();
    let children = parse.children();
    let mut keys = BTreeSet::new();

    for token in tokens {
        if token.head == 0 {
            continue;
        }
        keys.insert(SubtreeKey::edge(form(token.head), &token.form));
        let grandparent = tokens[token.head - 1].head;
        if grandparent != 0 {
            keys.insert(SubtreeKey::chain(form(grandparent), form(token.head), &token.form));
        }
    }
    if include_siblings {
        for (head, kids) in children.iter().enumerate().skip(1) {
            for (i, &a) in kids.iter().enumerate() {
                for &b in &kids[i + 1..] {
                    keys.insert(SubtreeKey::siblings(form(head), form(a), form(b)));
                }
            }
        }
    }
    keys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ParseToken;

    fn parse(spec: &[(&str, usize)]) -> DependencyParse {
        DependencyParse::new(
            spec.iter()
                .enumerate()
                .map(|(i, (form, head))| ParseToken {
                    index: i + 1,
                    form: form.to_string(),
                    pos: "N".into(),
                    head: *head,
                })
                .collect(),
        )
        .unwrap()
    }

    fn strings(keys: BTreeSet<SubtreeKey>) -> Vec<String> {
        keys.into_iter().map(SubtreeKey::into_string).collect()
    }

    #[test]
    fn single_edge() {
        let keys = extract_subtrees(&parse(&[("a", 0), ("b", 1)]), true);
        assert_eq!(strings(keys), ["a>b"]);
    }

    #[test]
    fn chain_of_three() {
        let keys = extract_subtrees(&parse(&[("a", 0), ("b", 1), ("c", 2)]), true);
        assert_eq!(strings(keys), ["a>b", "a>b>c", "b>c"]);
    }

    #[test]
    fn sibling_pair() {
        let p = parse(&[("a", 0), ("c", 1), ("b", 1)]);
        let keys = extract_subtrees(&p, true);
        assert_eq!(strings(keys), ["a>b", "a>c", "a>{b,c}"]);
        let chains_only = extract_subtrees(&p, false);
        assert_eq!(strings(chains_only), ["a>b", "a>c"]);
    }

    #[test]
    fn forms_are_case_folded() {
        let keys = extract_subtrees(&parse(&[("Please", 0), ("Sponsor", 1)]), true);
        assert_eq!(strings(keys), ["please>sponsor"]);
    }
}
