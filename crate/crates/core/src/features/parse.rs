//! Penn-Treebank-style bracketed constituency trees.
//!
//! Trees are consumed, not produced: they arrive one per line in bracketed
//! text (`(S (NP (DT the) (NN cat)) (VP (VBZ sleeps)))`), aligned by line
//! number with a sentence file. The only structural property the feature
//! extractor needs is the parse height, with leaves at height 0.

use crate::error::{Error, Result};

/// A constituency tree: internal nodes carry a label and at least one
/// child; leaves carry the token surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    /// A terminal holding one token surface.
    Leaf(String),
    /// A labeled internal node with one or more children.
    Node {
        /// Constituent label (`S`, `NP`, `VBZ`, ...).
        label: String,
        /// Children in order; never empty.
        children: Vec<ParseTree>,
    },
}

impl ParseTree {
    /// Parses one bracketed tree.
    ///
    /// A bare token with no brackets parses as a single leaf. A redundant
    /// outer wrapper with no label — the `( (S ...) )` convention of
    /// treebank files — is unwrapped. Unbalanced brackets, empty nodes, and
    /// trailing garbage are parse errors (reported at line 1; callers
    /// reading multi-line files substitute the real line number).
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = lex(text);
        if tokens.is_empty() {
            return Err(Error::parse(1, "empty parse tree"));
        }
        let mut pos = 0;
        let tree = parse_element(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::parse(
                1,
                format!(
                    "trailing input after tree: {:?}",
                    render_token(&tokens[pos])
                ),
            ));
        }
        Ok(tree)
    }

    /// Height of the tree: 0 for a leaf, 1 + max child height otherwise.
    pub fn height(&self) -> usize {
        match self {
            ParseTree::Leaf(_) => 0,
            ParseTree::Node { children, .. } => {
                1 + children.iter().map(ParseTree::height).max().unwrap_or(0)
            }
        }
    }

    /// Leaf surfaces in left-to-right order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            ParseTree::Leaf(surface) => out.push(surface),
            ParseTree::Node { children, .. } => {
                for child in children {
                    child.collect_leaves(out);
                }
            }
        }
    }
}

/// Height of the root: leaves are 0, each internal node adds 1.
pub fn parse_height(tree: &ParseTree) -> usize {
    tree.height()
}

#[derive(Debug, PartialEq)]
enum Lexeme {
    Open,
    Close,
    Atom(String),
}

fn lex(text: &str) -> Vec<Lexeme> {
    let mut tokens = Vec::new();
    let mut atom = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' => {
                if !atom.is_empty() {
                    tokens.push(Lexeme::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(if c == '(' {
                    Lexeme::Open
                } else {
                    Lexeme::Close
                });
            }
            c if c.is_whitespace() => {
                if !atom.is_empty() {
                    tokens.push(Lexeme::Atom(std::mem::take(&mut atom)));
                }
            }
            c => atom.push(c),
        }
    }
    if !atom.is_empty() {
        tokens.push(Lexeme::Atom(atom));
    }
    tokens
}

fn render_token(token: &Lexeme) -> String {
    match token {
        Lexeme::Open => "(".to_owned(),
        Lexeme::Close => ")".to_owned(),
        Lexeme::Atom(a) => a.clone(),
    }
}

fn parse_element(tokens: &[Lexeme], pos: &mut usize) -> Result<ParseTree> {
    match tokens.get(*pos) {
        Some(Lexeme::Atom(surface)) => {
            *pos += 1;
            Ok(ParseTree::Leaf(surface.clone()))
        }
        Some(Lexeme::Open) => {
            *pos += 1;
            // A label is an atom right after the bracket; `( (S ...))` has
            // none and is treated as an anonymous wrapper.
            let label = match tokens.get(*pos) {
                Some(Lexeme::Atom(label)) => {
                    *pos += 1;
                    Some(label.clone())
                }
                _ => None,
            };
            let mut children = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Lexeme::Close) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_element(tokens, pos)?),
                    None => return Err(Error::parse(1, "unbalanced brackets: missing ')'")),
                }
            }
            match (label, children.len()) {
                (None, 1) => Ok(children.pop().expect("one child")),
                (None, 0) => Err(Error::parse(1, "empty node '( )'")),
                (None, _) => Err(Error::parse(
                    1,
                    "wrapper node with no label must have one child",
                )),
                (Some(label), 0) => Err(Error::parse(1, format!("node {label:?} has no children"))),
                (Some(label), _) => Ok(ParseTree::Node { label, children }),
            }
        }
        Some(Lexeme::Close) => Err(Error::parse(1, "unexpected ')'")),
        None => Err(Error::parse(1, "empty parse tree")),
    }
}
