//! Convergence of sequences in `G` and the witness check for clopen sets.
//!
//! `g_n -> g` iff for every `N` the projections `Π_N(g_n)` are eventually
//! constant and the level-`N` letter counts of the minimal representatives
//! stay bounded. Sequences are given by explicit terms and an optional tail
//! rule; the rule is sampled on a window past every constant letter index,
//! where its behavior follows a fixed pattern.

use std::fmt;

use thiserror::Error;

use crate::clopen::ClopenExpr;
use crate::point::{GroupPoint, PointError};
use crate::template::{parse_template, InstantiateError, ParseError, Template};
use crate::universe::{TopologyError, Universe};
use crate::word::{parse_word, GroupWord, MonoidWord};

const WINDOW: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: bad start level `{text}`")]
    BadStart { line: usize, text: String },
    #[error("sequence has no terms and no rule")]
    Empty,
    #[error(transparent)]
    Instantiate(#[from] InstantiateError),
}

/// The terms `template(n)` for `n >= start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailRule {
    pub template: Template,
    pub start: u32,
}

impl TailRule {
    pub fn new(template: Template, start: u32) -> TailRule {
        TailRule { template, start }
    }

    pub fn term(&self, n: u32) -> Result<MonoidWord, InstantiateError> {
        self.template.instantiate(n)
    }

    pub fn group_term(&self, n: u32) -> Result<GroupPoint, InstantiateError> {
        Ok(GroupPoint::finite(self.term(n)?))
    }
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule: {} from {}", self.template, self.start)
    }
}

/// Parses `[rule:] <template> [from <k>]`; the start defaults to 1.
pub fn parse_rule(text: &str) -> Result<TailRule, SequenceError> {
    parse_rule_line(text, 1)
}

fn parse_rule_line(text: &str, line: usize) -> Result<TailRule, SequenceError> {
    let body = text.trim();
    let body = body.strip_prefix("rule:").unwrap_or(body).trim();
    let (tmpl, start) = match body.rsplit_once(" from ") {
        Some((tmpl, k)) => {
            let start = k.trim().parse().map_err(|_| SequenceError::BadStart {
                line,
                text: k.trim().to_string(),
            })?;
            (tmpl, start)
        }
        None => (body, 1),
    };
    let template = parse_template(tmpl.trim()).map_err(|source| SequenceError::Parse { line, source })?;
    // exponents grow with n, so they are valid everywhere once valid at the start
    template.instantiate(start)?;
    Ok(TailRule { template, start })
}

#[derive(Clone, Debug)]
pub struct Sequence {
    pub terms: Vec<GroupPoint>,
    pub rule: Option<TailRule>,
}

impl Sequence {
    pub fn explicit(terms: Vec<GroupPoint>) -> Sequence {
        Sequence { terms, rule: None }
    }

    pub fn from_rule(rule: TailRule) -> Sequence {
        Sequence {
            terms: Vec::new(),
            rule: Some(rule),
        }
    }

    /// One word per line, optionally followed by a `rule:` line. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Sequence, SequenceError> {
        let mut terms = Vec::new();
        let mut rule = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.starts_with("rule:") {
                rule = Some(parse_rule_line(line, i + 1)?);
            } else {
                let word = parse_word(line).map_err(|source| SequenceError::Parse { line: i + 1, source })?;
                terms.push(GroupPoint::finite(word));
            }
        }
        if terms.is_empty() && rule.is_none() {
            return Err(SequenceError::Empty);
        }
        Ok(Sequence { terms, rule })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Explicit terms only: the sequence is read as repeating its last term.
    ConstantTail,
    /// The rule does not depend on `n`.
    ConstantRule,
    /// Past `from`, only letters above every inspected level depend on `n`
    /// and no exponent does, so every projection is constant.
    InvariantPattern { from: u32 },
    /// All projections and letter counts constant on the sampled window.
    StableWindow { from: u32, to: u32 },
    /// The level-`level` letter count strictly grows with nondecreasing
    /// increments on the window.
    UnboundedCount { level: u32, samples: Vec<(u32, usize)> },
    /// `Π_level` cycles with the given period and is not constant.
    Periodic { level: u32, period: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ConstantTail => f.write_str("constant tail"),
            Certificate::ConstantRule => f.write_str("rule independent of n"),
            Certificate::InvariantPattern { from } => write!(f, "invariant pattern from n={from}"),
            Certificate::StableWindow { from, to } => write!(f, "stable on n={from}..{to}"),
            Certificate::UnboundedCount { level, samples } => {
                write!(f, "unbounded level-{level} count:")?;
                for (n, c) in samples {
                    write!(f, " c({n})={c}")?;
                }
                Ok(())
            }
            Certificate::Periodic { level, period } => write!(f, "level-{level} projection has period {period}"),
        }
    }
}

/// Sampled behavior of one level on the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEvidence {
    pub level: u32,
    pub projections: Vec<GroupWord>,
    pub counts: Vec<usize>,
}

impl LevelEvidence {
    fn stable(&self) -> bool {
        self.projections.windows(2).all(|w| w[0] == w[1]) && self.counts.windows(2).all(|w| w[0] == w[1])
    }

    fn unbounded(&self) -> bool {
        let diffs: Vec<i64> = self.counts.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
        diffs.iter().all(|&d| d > 0) && diffs.windows(2).all(|w| w[1] >= w[0])
    }

    fn period(&self) -> Option<usize> {
        let p = &self.projections;
        if p.windows(2).all(|w| w[0] == w[1]) {
            return None;
        }
        (2..=p.len() / 2).find(|&k| (k..p.len()).all(|i| p[i] == p[i - k]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Converges(GroupPoint),
    Diverges,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceVerdict {
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    /// Sampled indices `n`.
    pub window: Vec<u32>,
    pub evidence: Vec<LevelEvidence>,
}

impl ConvergenceVerdict {
    fn constant(limit: GroupPoint, certificate: Certificate) -> ConvergenceVerdict {
        ConvergenceVerdict {
            outcome: Outcome::Converges(limit),
            certificate: Some(certificate),
            window: Vec::new(),
            evidence: Vec::new(),
        }
    }

    pub fn limit(&self) -> Option<&GroupPoint> {
        match &self.outcome {
            Outcome::Converges(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for ConvergenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Converges(g) => write!(f, "converges {g}"),
            Outcome::Diverges => f.write_str("diverges"),
            Outcome::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// `converge(seq, depth)`.
pub fn converge(seq: &Sequence, depth: u32) -> Result<ConvergenceVerdict, PointError> {
    let Some(rule) = &seq.rule else {
        return Ok(match seq.terms.last() {
            Some(last) => {
                let limit = match last.as_finite() {
                    Some(g) => GroupPoint::embed(g),
                    None => last.clone(),
                };
                ConvergenceVerdict::constant(limit, Certificate::ConstantTail)
            }
            None => ConvergenceVerdict {
                outcome: Outcome::Inconclusive,
                certificate: None,
                window: Vec::new(),
                evidence: Vec::new(),
            },
        });
    };
    let t = &rule.template;
    if !t.has_param() {
        let g = t.instantiate(rule.start)?.reduce();
        return Ok(ConvergenceVerdict::constant(
            GroupPoint::embed(&g),
            Certificate::ConstantRule,
        ));
    }

    // inspect every level that holds a constant letter
    let levels = depth.max(t.max_const_index()).max(1);
    let offset = t.min_param_offset().unwrap_or(0);
    let past = (i64::from(levels) + 1 - offset).max(1) as u32;
    let from = rule.start.max(past);
    let window: Vec<u32> = (from..from + WINDOW).collect();
    let reduced: Vec<GroupWord> = window
        .iter()
        .map(|&n| t.instantiate(n).map(|w| w.reduce()))
        .collect::<Result<_, _>>()?;
    let evidence: Vec<LevelEvidence> = (1..=levels)
        .map(|level| LevelEvidence {
            level,
            projections: reduced.iter().map(|g| g.project(level)).collect(),
            counts: reduced.iter().map(|g| g.as_word().letter_count(level)).collect(),
        })
        .collect();
    let limit = || GroupPoint::embed(&reduced[0].project(levels));
    let verdict = |outcome, certificate| ConvergenceVerdict {
        outcome,
        certificate: Some(certificate),
        window: window.clone(),
        evidence: evidence.clone(),
    };

    if evidence.iter().all(LevelEvidence::stable) {
        let certificate = if t.exponent_uses_param() {
            Certificate::StableWindow {
                from,
                to: from + WINDOW - 1,
            }
        } else {
            Certificate::InvariantPattern { from }
        };
        return Ok(verdict(Outcome::Converges(limit()), certificate));
    }
    if let Some(e) = evidence.iter().find(|e| e.unbounded()) {
        let samples = window.iter().copied().zip(e.counts.iter().copied()).collect();
        return Ok(verdict(
            Outcome::Diverges,
            Certificate::UnboundedCount {
                level: e.level,
                samples,
            },
        ));
    }
    if let Some((level, period)) = evidence.iter().find_map(|e| e.period().map(|p| (e.level, p))) {
        return Ok(verdict(Outcome::Diverges, Certificate::Periodic { level, period }));
    }
    Ok(ConvergenceVerdict {
        outcome: Outcome::Inconclusive,
        certificate: None,
        window,
        evidence,
    })
}

/// A cataloged family of sequences with a declared sample window. The
/// window stands in for the tail: if every sampled term lies on one side of
/// a set and the limit on the other, the set is not closed or not open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub rule: TailRule,
    pub window: std::ops::RangeInclusive<u32>,
}

impl Witness {
    pub fn new(template: &str, window: std::ops::RangeInclusive<u32>) -> Witness {
        let template = parse_template(template).expect("catalog templates are valid");
        Witness {
            name: format!("({template})_n"),
            rule: TailRule::new(template, *window.start()),
            window,
        }
    }
}

/// Families used when no catalog is given: `(x_n x_{n+1})` over the first
/// indices, `x1 x_n X1`, and `c x_n^{±1}`, `x_n c` for short reduced `c`.
pub fn default_catalog() -> Vec<Witness> {
    let mut out = vec![
        Witness::new("x%n x%n+1", 1..=5),
        Witness::new("x1 x%n X1", 2..=6),
        Witness::new("x%n", 1..=5),
    ];
    for c in GroupWord::all_up_to(2, 2) {
        if c.is_identity() {
            continue;
        }
        let c = c.to_string();
        for shape in [format!("{c} x%n"), format!("{c} X%n"), format!("x%n {c}")] {
            out.push(Witness::new(&shape, 4..=8));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clopenness {
    Ok,
    BoundaryWitness {
        witness: String,
        limit: GroupPoint,
        /// Whether the sampled terms lie inside the set.
        terms_inside: bool,
    },
}

impl fmt::Display for Clopenness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clopenness::Ok => f.write_str("ok"),
            Clopenness::BoundaryWitness {
                witness,
                limit,
                terms_inside,
            } => {
                let side = if *terms_inside { "inside" } else { "outside" };
                write!(f, "boundary witness {witness} (terms {side}) -> {limit}")
            }
        }
    }
}

/// `relatively_clopen(E, universe, depth)` against the universe's catalog.
pub fn relatively_clopen(e: &ClopenExpr, universe: &Universe, depth: u32) -> Result<Clopenness, TopologyError> {
    check_witnesses(e, universe.witnesses(), depth)
}

pub fn check_witnesses(e: &ClopenExpr, witnesses: &[Witness], depth: u32) -> Result<Clopenness, TopologyError> {
    if e.is_empty() {
        return Ok(Clopenness::Ok);
    }
    let depth = depth.max(e.max_level());
    for w in witnesses {
        let mut inside = true;
        let mut outside = true;
        for n in w.window.clone() {
            let term = w.rule.group_term(n).map_err(PointError::from)?;
            if e.contains(&term)? {
                outside = false;
            } else {
                inside = false;
            }
        }
        if !inside && !outside {
            continue;
        }
        let verdict = converge(&Sequence::from_rule(w.rule.clone()), depth)?;
        if let Outcome::Converges(limit) = verdict.outcome {
            if e.contains(&limit)? != inside {
                return Ok(Clopenness::BoundaryWitness {
                    witness: w.name.clone(),
                    limit,
                    terms_inside: inside,
                });
            }
        }
    }
    Ok(Clopenness::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(s: &str) -> Sequence {
        Sequence::from_rule(parse_rule(s).unwrap())
    }

    fn gp(s: &str) -> GroupPoint {
        GroupPoint::finite(parse_word(s).unwrap())
    }

    #[test]
    fn conjugated_generators_converge_to_identity() {
        let v = converge(&rule("x1 x%n X1 from 2"), 3).unwrap();
        assert_eq!(v.outcome, Outcome::Converges(GroupPoint::identity()));
        assert!(matches!(v.certificate, Some(Certificate::InvariantPattern { .. })));
    }

    #[test]
    fn growing_powers_diverge_with_count_certificate() {
        let v = converge(&rule("(x1 x%n X1 x%n)^%n from 2"), 3).unwrap();
        assert_eq!(v.outcome, Outcome::Diverges);
        let Some(Certificate::UnboundedCount { level, samples }) = v.certificate else {
            panic!("expected a count certificate");
        };
        assert_eq!(level, 1);
        for (n, c) in samples {
            assert_eq!(c, 2 * n as usize);
        }
    }

    #[test]
    fn constant_sequences_converge() {
        let v = converge(&Sequence::explicit(vec![gp("x1 x2"), gp("x1 x2"), gp("x1 x2")]), 3).unwrap();
        assert_eq!(v.outcome, Outcome::Converges(gp("x1 x2")));
        let v = converge(&rule("x2 X1"), 3).unwrap();
        assert_eq!(v.outcome, Outcome::Converges(gp("x2 X1")));
    }

    #[test]
    fn adjacent_pairs_converge_to_identity() {
        let v = converge(&rule("x%n x%n+1"), 4).unwrap();
        assert_eq!(v.outcome, Outcome::Converges(GroupPoint::identity()));
        for e in &v.evidence {
            assert!(e.counts.iter().all(|&c| c <= 1));
        }
    }

    #[test]
    fn verdicts_do_not_depend_on_depth() {
        for text in ["x1 x%n X1 from 2", "(x1 x%n X1 x%n)^%n from 2", "x2 x%n", "x%n x%n+1"] {
            let outcomes: Vec<Outcome> = (1..7).map(|d| converge(&rule(text), d).unwrap().outcome).collect();
            assert!(outcomes.windows(2).all(|w| w[0] == w[1]), "{text}");
        }
    }

    #[test]
    fn sequence_files_parse() {
        let seq = Sequence::parse("# comment\nx1\n\nx1 x2\nrule: x%n from 3\n").unwrap();
        assert_eq!(seq.terms.len(), 2);
        assert_eq!(seq.rule.unwrap().start, 3);
        assert!(matches!(
            Sequence::parse("x1\nx0\n"),
            Err(SequenceError::Parse { line: 2, .. })
        ));
        assert!(matches!(Sequence::parse("# nothing\n"), Err(SequenceError::Empty)));
    }

    #[test]
    fn naive_union_has_a_boundary_witness() {
        let naive: ClopenExpr = "Cyl(1; x1) + Cyl(2; x2) + Cyl(3; x3) + Cyl(4; x4) + Cyl(5; x5)"
            .parse()
            .unwrap();
        let verdict = check_witnesses(&naive, &default_catalog(), 5).unwrap();
        let Clopenness::BoundaryWitness {
            limit, terms_inside, ..
        } = verdict
        else {
            panic!("expected a witness, got {verdict}");
        };
        assert!(terms_inside);
        assert_eq!(limit, GroupPoint::identity());
    }

    #[test]
    fn single_cylinders_pass() {
        for text in ["Cyl(1; x1)", "Cyl(2; x1 X2)", "Cyl(1; e)", "empty"] {
            let e: ClopenExpr = text.parse().unwrap();
            assert_eq!(
                check_witnesses(&e, &default_catalog(), 3).unwrap(),
                Clopenness::Ok,
                "{text}"
            );
        }
    }
}
