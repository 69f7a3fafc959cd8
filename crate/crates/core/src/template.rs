//! The word grammar and its parameterized form.
//!
//! ```text
//! word   := "e" | term+
//! term   := letter | "(" term+ ")" "^" count
//! letter := ("x" | "X") index
//! ```
//!
//! In a template, an index or count may also be `%n`, `%n+k` or `%n-k`,
//! which is replaced by the level (or sequence position) `n` on
//! instantiation. Plain words are templates without any `%n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{Letter, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("generator index 0 is not allowed")]
    ZeroIndex,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("number too large")]
    Overflow,
    #[error("`%n` is only allowed in templates")]
    ParameterNotAllowed,
    #[error("`e` must stand alone")]
    MisplacedIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("template index evaluates to {value} at n = {n}")]
    BadIndex { n: u32, value: i64 },
    #[error("template exponent evaluates to {value} at n = {n}")]
    BadExponent { n: u32, value: i64 },
}

/// An index or exponent: a constant, or the parameter plus an offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexExpr {
    Const(u32),
    Param(i64),
}

impl IndexExpr {
    pub fn eval(self, n: u32) -> i64 {
        match self {
            IndexExpr::Const(c) => i64::from(c),
            IndexExpr::Param(offset) => i64::from(n) + offset,
        }
    }

    pub fn is_param(self) -> bool {
        matches!(self, IndexExpr::Param(_))
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndexExpr::Const(c) => write!(f, "{c}"),
            IndexExpr::Param(0) => f.write_str("%n"),
            IndexExpr::Param(o) if o > 0 => write!(f, "%n+{o}"),
            IndexExpr::Param(o) => write!(f, "%n-{}", -o),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Letter { index: IndexExpr, inverse: bool },
    Power { body: Vec<Node>, exponent: IndexExpr },
}

/// A parsed word template. The empty template denotes `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Template {
    nodes: Vec<Node>,
}

impl Template {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// A template with no parameter denoting exactly `word`.
    pub fn constant(word: &MonoidWord) -> Template {
        Template {
            nodes: word
                .letters()
                .iter()
                .map(|l| Node::Letter {
                    index: IndexExpr::Const(l.index()),
                    inverse: l.is_inverse(),
                })
                .collect(),
        }
    }

    pub fn instantiate(&self, n: u32) -> Result<MonoidWord, InstantiateError> {
        let mut letters = Vec::new();
        expand(&self.nodes, n, &mut letters)?;
        Ok(MonoidWord::from_letters(letters))
    }

    pub fn has_param(&self) -> bool {
        walk_any(&self.nodes, &mut |node| match node {
            Node::Letter { index, .. } => index.is_param(),
            Node::Power { exponent, .. } => exponent.is_param(),
        })
    }

    /// True when some exponent depends on `%n`.
    pub fn exponent_uses_param(&self) -> bool {
        walk_any(
            &self.nodes,
            &mut |node| matches!(node, Node::Power { exponent, .. } if exponent.is_param()),
        )
    }

    /// Largest constant letter index, 0 if none.
    pub fn max_const_index(&self) -> u32 {
        let mut best = 0;
        walk_any(&self.nodes, &mut |node| {
            if let Node::Letter {
                index: IndexExpr::Const(c),
                ..
            } = node
            {
                best = best.max(*c);
            }
            false
        });
        best
    }

    /// Smallest offset among parameterized letter indices.
    pub fn min_param_offset(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        walk_any(&self.nodes, &mut |node| {
            if let Node::Letter {
                index: IndexExpr::Param(o),
                ..
            } = node
            {
                best = Some(best.map_or(*o, |b| b.min(*o)));
            }
            false
        });
        best
    }

    /// True when every letter has index exactly `%n`.
    pub fn only_level_letters(&self) -> bool {
        !walk_any(
            &self.nodes,
            &mut |node| matches!(node, Node::Letter { index, .. } if *index != IndexExpr::Param(0)),
        )
    }

    /// Maximum number of nested parameterized exponents; bounds the degree
    /// of any letter count as a polynomial in `n`, given letter indices do
    /// not collide.
    pub fn param_degree(&self) -> u32 {
        fn depth(nodes: &[Node]) -> u32 {
            nodes
                .iter()
                .map(|node| match node {
                    Node::Letter { .. } => 0,
                    Node::Power { body, exponent } => depth(body) + u32::from(exponent.is_param()),
                })
                .max()
                .unwrap_or(0)
        }
        depth(&self.nodes)
    }
}

fn walk_any(nodes: &[Node], f: &mut impl FnMut(&Node) -> bool) -> bool {
    for node in nodes {
        if f(node) {
            return true;
        }
        if let Node::Power { body, .. } = node {
            if walk_any(body, f) {
                return true;
            }
        }
    }
    false
}

fn expand(nodes: &[Node], n: u32, out: &mut Vec<Letter>) -> Result<(), InstantiateError> {
    for node in nodes {
        match node {
            Node::Letter { index, inverse } => {
                let value = index.eval(n);
                let letter = u32::try_from(value)
                    .ok()
                    .and_then(|i| Letter::new(i, *inverse))
                    .ok_or(InstantiateError::BadIndex { n, value })?;
                out.push(letter);
            }
            Node::Power { body, exponent } => {
                let value = exponent.eval(n);
                if value < 0 {
                    return Err(InstantiateError::BadExponent { n, value });
                }
                for _ in 0..value {
                    expand(body, n, out)?;
                }
            }
        }
    }
    Ok(())
}

fn fmt_nodes(nodes: &[Node], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, node) in nodes.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match node {
            Node::Letter { index, inverse } => {
                write!(f, "{}{index}", if *inverse { 'X' } else { 'x' })?;
            }
            Node::Power { body, exponent } => {
                f.write_str("(")?;
                fmt_nodes(body, f)?;
                write!(f, ")^{exponent}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nodes.is_empty() {
            return f.write_str("e");
        }
        fmt_nodes(&self.nodes, f)
    }
}

impl FromStr for Template {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_template(s)
    }
}

pub fn parse_template(text: &str) -> Result<Template, ParseError> {
    Parser::new(text, true).parse_all()
}

pub fn parse_word(text: &str) -> Result<MonoidWord, ParseError> {
    let template = Parser::new(text, false).parse_all()?;
    // constant templates never fail to expand
    Ok(template.instantiate(0).expect("constant template expands"))
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    allow_param: bool,
    _text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, allow_param: bool) -> Self {
        Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            end: text.len(),
            allow_param,
            _text: text,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn parse_all(mut self) -> Result<Template, ParseError> {
        self.skip_ws();
        if self.peek() == Some('e') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(Template::default());
            }
            self.pos = save;
            return Err(self.err(ParseErrorKind::MisplacedIdentity));
        }
        if self.peek().is_none() {
            return Err(self.err(ParseErrorKind::UnexpectedEnd("a word")));
        }
        let nodes = self.parse_terms()?;
        self.skip_ws();
        match self.peek() {
            None => Ok(Template { nodes }),
            Some(c) => Err(self.err(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    /// One or more terms, stopping before `)` or end of input.
    fn parse_terms(&mut self) -> Result<Vec<Node>, ParseError> {
        let mut nodes = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                Some('x') | Some('X') => {
                    let inverse = self.peek() == Some('X');
                    self.pos += 1;
                    let index = self.parse_index(true)?;
                    nodes.push(Node::Letter { index, inverse });
                }
                Some('(') => {
                    self.pos += 1;
                    let body = self.parse_terms()?;
                    self.skip_ws();
                    if body.is_empty() {
                        return Err(self.err(ParseErrorKind::Expected("a letter or group")));
                    }
                    match self.peek() {
                        Some(')') => self.pos += 1,
                        None => return Err(self.err(ParseErrorKind::UnexpectedEnd("`)`"))),
                        Some(c) => return Err(self.err(ParseErrorKind::UnexpectedChar(c))),
                    }
                    match self.peek() {
                        Some('^') => self.pos += 1,
                        None => return Err(self.err(ParseErrorKind::UnexpectedEnd("`^`"))),
                        Some(_) => return Err(self.err(ParseErrorKind::Expected("`^` after group"))),
                    }
                    if self.peek() == Some('-') {
                        return Err(self.err(ParseErrorKind::NegativeExponent));
                    }
                    let exponent = self.parse_index(false)?;
                    nodes.push(Node::Power { body, exponent });
                }
                Some('e') => return Err(self.err(ParseErrorKind::MisplacedIdentity)),
                Some(c) => return Err(self.err(ParseErrorKind::UnexpectedChar(c))),
            }
        }
        Ok(nodes)
    }

    fn parse_number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.err(ParseErrorKind::Overflow))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.peek() {
                None => self.err(ParseErrorKind::UnexpectedEnd("a number")),
                Some(_) => self.err(ParseErrorKind::Expected("a number")),
            });
        }
        Ok(value)
    }

    fn parse_index(&mut self, is_letter: bool) -> Result<IndexExpr, ParseError> {
        if self.peek() == Some('%') {
            if !self.allow_param {
                return Err(self.err(ParseErrorKind::ParameterNotAllowed));
            }
            self.pos += 1;
            if self.peek() != Some('n') {
                return Err(self.err(ParseErrorKind::Expected("`n` after `%`")));
            }
            self.pos += 1;
            let offset = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    i64::from(self.parse_number()?)
                }
                Some('-') => {
                    self.pos += 1;
                    -i64::from(self.parse_number()?)
                }
                _ => 0,
            };
            return Ok(IndexExpr::Param(offset));
        }
        let at = self.pos;
        let value = self.parse_number()?;
        if is_letter && value == 0 {
            self.pos = at;
            return Err(self.err(ParseErrorKind::ZeroIndex));
        }
        Ok(IndexExpr::Const(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(spec: &[(u32, bool)]) -> MonoidWord {
        MonoidWord::from_letters(spec.iter().map(|&(i, inv)| Letter::new(i, inv).unwrap()).collect())
    }

    #[test]
    fn parses_identity_and_letters() {
        assert_eq!(parse_word("e").unwrap(), MonoidWord::empty());
        assert_eq!(parse_word("  e ").unwrap(), MonoidWord::empty());
        assert_eq!(
            parse_word("x1 X1 x2").unwrap(),
            letters(&[(1, false), (1, true), (2, false)])
        );
    }

    #[test]
    fn expands_groups() {
        let expected = letters(&[
            (1, false),
            (3, false),
            (1, true),
            (3, false),
            (1, false),
            (3, false),
            (1, true),
            (3, false),
            (2, false),
        ]);
        assert_eq!(parse_word("(x1 x3 X1 x3)^2 x2").unwrap(), expected);
        assert_eq!(parse_word("((x1)^2 X2)^2").unwrap().to_string(), "x1 x1 X2 x1 x1 X2");
        assert_eq!(parse_word("(x1)^0").unwrap(), MonoidWord::empty());
    }

    #[test]
    fn reports_errors_with_positions() {
        let err = parse_word("x1 x0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroIndex);
        assert_eq!(err.position, 4);
        assert_eq!(
            parse_word("(x1)^-2").unwrap_err().kind,
            ParseErrorKind::NegativeExponent
        );
        assert_eq!(parse_word("x1 y2").unwrap_err().position, 3);
        assert_eq!(parse_word("x1 e").unwrap_err().kind, ParseErrorKind::MisplacedIdentity);
        assert!(parse_word("").is_err());
        assert!(parse_word("(x1 x2").is_err());
        assert!(parse_word("(x1 x2) x3").is_err());
        assert_eq!(parse_word("x%n").unwrap_err().kind, ParseErrorKind::ParameterNotAllowed);
    }

    #[test]
    fn templates_instantiate() {
        let t = parse_template("(x1 x%n X1 x%n)^%n").unwrap();
        assert_eq!(t.instantiate(2).unwrap(), parse_word("(x1 x2 X1 x2)^2").unwrap());
        assert!(t.exponent_uses_param());
        assert_eq!(t.max_const_index(), 1);
        let w = parse_template("(x1 x%n+1 X1 x%n+1)^%n x%n").unwrap();
        assert_eq!(w.instantiate(3).unwrap(), parse_word("(x1 x4 X1 x4)^3 x3").unwrap());
        assert_eq!(w.min_param_offset(), Some(0));
        let shifted = parse_template("x%n-1").unwrap();
        assert!(shifted.instantiate(1).is_err());
        assert_eq!(shifted.instantiate(3).unwrap(), parse_word("x2").unwrap());
        assert!(parse_template("x%n X%n").unwrap().only_level_letters());
        assert!(!parse_template("x%n x1").unwrap().only_level_letters());
    }

    #[test]
    fn template_display_round_trips() {
        for text in ["e", "x%n", "(x1 x%n+1 X1 x%n+1)^%n x%n", "(X%n-1)^3 x2"] {
            let t = parse_template(text).unwrap();
            assert_eq!(parse_template(&t.to_string()).unwrap(), t);
        }
    }
}
