//! Clopen expressions: finite unions of cylinders minus cylinders.
//!
//! Any two cylinders are nested or disjoint, so every boolean combination
//! normalizes to the shape `∪ᵢ (Cᵢ \ ∪ⱼ Dᵢⱼ)` without leaving the family.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::point::{Cylinder, GroupPoint, PointError};
use crate::word::parse_word;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("position {position}: {message}")]
pub struct ExprParseError {
    pub position: usize,
    pub message: String,
}

/// `cyl \ (minus_1 ∪ ... ∪ minus_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub cyl: Cylinder,
    pub minus: Vec<Cylinder>,
}

impl Term {
    pub fn new(cyl: Cylinder) -> Term {
        Term { cyl, minus: Vec::new() }
    }

    pub fn contains(&self, g: &GroupPoint) -> Result<bool, PointError> {
        if !self.cyl.contains_point(g)? {
            return Ok(false);
        }
        for d in &self.minus {
            if d.contains_point(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Empty for certain when a subtracted cylinder covers the whole term.
    fn is_void(&self) -> bool {
        self.minus.iter().any(|d| d.contains(&self.cyl))
    }

    fn normalize(mut self) -> Option<Term> {
        if self.is_void() {
            return None;
        }
        self.minus.retain(|d| !d.is_disjoint(&self.cyl));
        self.minus.sort();
        self.minus.dedup();
        let minus = self.minus.clone();
        self.minus
            .retain(|d| !minus.iter().any(|other| other != d && other.contains(d)));
        Some(self)
    }

    fn intersect_cyl(&self, c: &Cylinder) -> Option<Term> {
        let cyl = self.cyl.intersect(c)?;
        Term {
            cyl,
            minus: self.minus.clone(),
        }
        .normalize()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cyl.fmt(f)?;
        for d in &self.minus {
            write!(f, " - {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClopenExpr {
    terms: Vec<Term>,
}

impl ClopenExpr {
    pub fn empty() -> ClopenExpr {
        ClopenExpr::default()
    }

    pub fn cylinder(c: Cylinder) -> ClopenExpr {
        ClopenExpr {
            terms: vec![Term::new(c)],
        }
    }

    pub fn from_terms(terms: Vec<Term>) -> ClopenExpr {
        ClopenExpr { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Syntactically empty. A nonempty expression may still denote `∅`
    /// only if it was not normalized.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_level(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| std::iter::once(&t.cyl).chain(&t.minus))
            .map(Cylinder::level)
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, g: &GroupPoint) -> Result<bool, PointError> {
        for t in &self.terms {
            if t.contains(g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn union(&self, other: &ClopenExpr) -> ClopenExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ClopenExpr { terms }.simplify()
    }

    pub fn intersect_cyl(&self, c: &Cylinder) -> ClopenExpr {
        ClopenExpr {
            terms: self.terms.iter().filter_map(|t| t.intersect_cyl(c)).collect(),
        }
    }

    pub fn intersect(&self, other: &ClopenExpr) -> ClopenExpr {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(mut t) = a.intersect_cyl(&b.cyl) {
                    t.minus.extend(b.minus.iter().cloned());
                    terms.extend(t.normalize());
                }
            }
        }
        ClopenExpr { terms }.simplify()
    }

    fn minus_cyl(&self, c: &Cylinder) -> ClopenExpr {
        let mut terms = Vec::new();
        for t in &self.terms {
            if c.contains(&t.cyl) {
                continue;
            }
            if t.cyl.contains(c) {
                let mut t = t.clone();
                t.minus.push(c.clone());
                terms.extend(t.normalize());
            } else {
                terms.push(t.clone());
            }
        }
        ClopenExpr { terms }
    }

    pub fn difference(&self, other: &ClopenExpr) -> ClopenExpr {
        let mut acc = self.clone();
        for t in &other.terms {
            // X \ (C \ ∪D) = (X \ C) ∪ ∪(X ∩ D), with each D inside C
            let mut next = acc.minus_cyl(&t.cyl);
            for d in &t.minus {
                if let Some(d) = t.cyl.intersect(d) {
                    next.terms.extend(acc.intersect_cyl(&d).terms);
                }
            }
            acc = next;
        }
        acc.simplify()
    }

    /// Drops void terms, redundant subtractions, and terms covered by a
    /// plain cylinder term. The denoted set is unchanged.
    pub fn simplify(&self) -> ClopenExpr {
        let mut terms: Vec<Term> = self.terms.iter().cloned().filter_map(Term::normalize).collect();
        let plain: Vec<Cylinder> = terms
            .iter()
            .filter(|t| t.minus.is_empty())
            .map(|t| t.cyl.clone())
            .collect();
        let mut kept: Vec<Term> = Vec::new();
        for t in terms.drain(..) {
            let covered = plain
                .iter()
                .any(|c| c.contains(&t.cyl) && (c != &t.cyl || !t.minus.is_empty()));
            if !covered && !kept.contains(&t) {
                kept.push(t);
            }
        }
        ClopenExpr { terms: kept }
    }
}

impl From<Cylinder> for ClopenExpr {
    fn from(c: Cylinder) -> Self {
        ClopenExpr::cylinder(c)
    }
}

impl fmt::Display for ClopenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("empty");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            t.fmt(f)?;
        }
        Ok(())
    }
}

impl FromStr for ClopenExpr {
    type Err = ExprParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

/// Parses `Cyl(N; word)` atoms combined with `+`, `-`, parentheses and
/// `empty`. Difference binds tighter than union.
pub fn parse_expr(text: &str) -> Result<ClopenExpr, ExprParseError> {
    let mut p = ExprParser { text, pos: 0 };
    let expr = p.union()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, message: impl Into<String>) -> ExprParseError {
        ExprParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<ClopenExpr, ExprParseError> {
        let mut acc = self.difference()?;
        while self.eat("+") {
            let rhs = self.difference()?;
            acc = acc.union(&rhs);
        }
        Ok(acc)
    }

    fn difference(&mut self) -> Result<ClopenExpr, ExprParseError> {
        let mut acc = self.atom()?;
        while self.eat("-") {
            let rhs = self.atom()?;
            acc = acc.difference(&rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ClopenExpr, ExprParseError> {
        self.skip_ws();
        if self.eat("empty") {
            return Ok(ClopenExpr::empty());
        }
        if self.eat("Cyl") {
            return self.cylinder().map(ClopenExpr::cylinder);
        }
        if self.eat("(") {
            let inner = self.union()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        Err(self.error("expected `Cyl(`, `empty` or `(`"))
    }

    fn cylinder(&mut self) -> Result<Cylinder, ExprParseError> {
        if !self.eat("(") {
            return Err(self.error("expected `(` after `Cyl`"));
        }
        self.skip_ws();
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        let level: u32 = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("expected a level"))?;
        self.pos += digits;
        if !self.eat(";") {
            return Err(self.error("expected `;`"));
        }
        let start = self.pos;
        let mut depth = 0usize;
        let mut end = None;
        for (i, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = Some(i);
                    break;
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        let end = end.ok_or_else(|| self.error("unterminated cylinder"))?;
        let word_text = &self.rest()[..end];
        let word = parse_word(word_text.trim()).map_err(|e| ExprParseError {
            position: start + (word_text.len() - word_text.trim_start().len()) + e.position,
            message: e.kind.to_string(),
        })?;
        self.pos += end + 1;
        Cylinder::new(level, word.reduce()).map_err(|e| ExprParseError {
            position: start,
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ClopenExpr {
        s.parse().unwrap()
    }

    fn gp(s: &str) -> GroupPoint {
        GroupPoint::finite(parse_word(s).unwrap())
    }

    #[test]
    fn membership_examples() {
        assert!(e("Cyl(1; x1)").contains(&gp("x1")).unwrap());
        assert!(e("Cyl(1; x1)").contains(&gp("x1 x2")).unwrap());
        assert!(!e("Cyl(1; x1)").contains(&gp("e")).unwrap());
        assert!(!e("empty").contains(&gp("e")).unwrap());
    }

    #[test]
    fn parse_display_round_trip() {
        for text in [
            "empty",
            "Cyl(1; x1)",
            "Cyl(1; e) - Cyl(2; x2)",
            "Cyl(2; x1 X2) + Cyl(3; x3) - Cyl(4; x3 x4)",
        ] {
            let expr = e(text);
            assert_eq!(e(&expr.to_string()), expr, "{text}");
        }
    }

    #[test]
    fn differences_normalize() {
        // Cyl(1;e) - (Cyl(1;e) - Cyl(2;x2)) = Cyl(2;x2)
        assert_eq!(e("Cyl(1; e) - (Cyl(1; e) - Cyl(2; x2))"), e("Cyl(2; x2)"));
        assert_eq!(e("Cyl(1; x1) - Cyl(1; e)"), e("Cyl(1; x1)"));
        assert_eq!(e("Cyl(2; x2) - Cyl(1; e)"), ClopenExpr::empty());
        assert_eq!(e("Cyl(1; e) + Cyl(2; x2)"), e("Cyl(1; e)"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_expr("Cyl(1; x1 y2)").unwrap_err();
        assert_eq!(err.position, 10);
        assert!(parse_expr("Cyl(1; x2)").is_err());
        assert!(parse_expr("Cyl(1; x1").is_err());
        assert!(parse_expr("Cyl(1; x1) +").is_err());
    }

    #[test]
    fn words_with_groups_inside_cylinders() {
        let expr = e("Cyl(3; (x1 x3 X1 x3)^2 x2)");
        assert!(expr.contains(&gp("(x1 x3 X1 x3)^2 x2 x4")).unwrap());
    }
}
