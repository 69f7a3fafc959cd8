//! Points of the inverse limit `X_∞` and of its quotient `G`.
//!
//! A [`Point`] is a coherent sequence of unreduced words, one per level. It
//! is presented either by a single finite word (an eventually constant
//! sequence) or by a stream: a base word followed by one block per level,
//! where the level-`n` block uses only letters of index `n`.
//!
//! A [`GroupPoint`] is the class of a point in `G`: two points are equal in
//! `G` when their reduced projections agree at every level.

use std::fmt;

use thiserror::Error;

use crate::template::{parse_template, InstantiateError, ParseError, Template};
use crate::word::{GroupWord, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("level {requested} exceeds probe depth {probe_depth}")]
    DepthExceeded { requested: u32, probe_depth: u32 },
    #[error("level-{level} words of the minimal representative are not known to be stable within depth {depth}; the stream must be materialized to level {needed}")]
    StabilizationNotDetected { level: u32, depth: u32, needed: u32 },
    #[error("point is not finite-stage")]
    NotFiniteStage,
    #[error("invalid stream: {0}")]
    InvalidStream(String),
    #[error("invalid cylinder: base {base} has level above {level}")]
    InvalidCylinder { level: u32, base: String },
    #[error(transparent)]
    Template(#[from] InstantiateError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Base word, then level-`n` blocks for every `n >= start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stream {
    base: MonoidWord,
    block: Template,
    start: u32,
    reduce_blocks: bool,
}

impl Stream {
    pub fn base(&self) -> &MonoidWord {
        &self.base
    }

    pub fn block(&self) -> &Template {
        &self.block
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    fn block_at(&self, n: u32) -> Result<MonoidWord, PointError> {
        let raw = self.block.instantiate(n)?;
        Ok(if self.reduce_blocks { raw.reduce().into() } else { raw })
    }

    /// From this level on, each new level only appends its block.
    fn settled_level(&self) -> u32 {
        self.base.level().max(self.start.saturating_sub(1))
    }

    fn word_at(&self, n: u32) -> Result<MonoidWord, PointError> {
        let mut letters = self.base.retract(n).letters().to_vec();
        for k in self.start..=n {
            letters.extend_from_slice(self.block_at(k)?.letters());
        }
        Ok(MonoidWord::from_letters(letters))
    }

    /// Signed exponent of the level-`n` block in `x_n`.
    fn block_exponent(&self, n: u32) -> Result<i64, PointError> {
        Ok(self.block.instantiate(n)?.exponent_sum(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Finite(MonoidWord),
    Stream(Stream),
}

/// A point of `X_∞`. Streams carry a probe depth: the largest level at
/// which they may be materialized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    presentation: Presentation,
    probe_depth: Option<u32>,
}

impl Point {
    pub fn finite(word: MonoidWord) -> Point {
        Point {
            presentation: Presentation::Finite(word),
            probe_depth: None,
        }
    }

    pub fn stream(
        base: MonoidWord,
        block: Template,
        start: Option<u32>,
        probe_depth: u32,
    ) -> Result<Point, PointError> {
        let start = start.unwrap_or(base.level() + 1);
        if start == 0 {
            return Err(PointError::InvalidStream("start level must be at least 1".into()));
        }
        if !block.only_level_letters() {
            return Err(PointError::InvalidStream(format!(
                "block `{block}` must use only letters of index %n"
            )));
        }
        // exponents are nondecreasing in n, so validity at the start suffices
        block.instantiate(start)?;
        Ok(Point {
            presentation: Presentation::Stream(Stream {
                base,
                block,
                start,
                reduce_blocks: false,
            }),
            probe_depth: Some(probe_depth),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn probe_depth(&self) -> Option<u32> {
        self.probe_depth
    }

    pub fn as_finite(&self) -> Option<&MonoidWord> {
        match &self.presentation {
            Presentation::Finite(w) => Some(w),
            Presentation::Stream(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn check_depth(&self, level: u32) -> Result<(), PointError> {
        match self.probe_depth {
            Some(probe_depth) if level > probe_depth => Err(PointError::DepthExceeded {
                requested: level,
                probe_depth,
            }),
            _ => Ok(()),
        }
    }

    /// The level-`n` coordinate `x_n`.
    pub fn word_at(&self, n: u32) -> Result<MonoidWord, PointError> {
        self.check_depth(n)?;
        match &self.presentation {
            Presentation::Finite(w) => Ok(w.retract(n)),
            Presentation::Stream(s) => s.word_at(n),
        }
    }

    /// Replaces the probe depth of a stream; finite points are unaffected.
    pub fn with_probe_depth(mut self, depth: u32) -> Point {
        if self.probe_depth.is_some() {
            self.probe_depth = Some(depth);
        }
        self
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.presentation {
            Presentation::Finite(w) => w.fmt(f),
            Presentation::Stream(s) => {
                write!(f, "stream {} :: {} from {}", s.base, s.block, s.start)?;
                if s.reduce_blocks {
                    f.write_str(" reduced")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses a word literal, or `stream <base> :: <block> [from <k>] [reduced]`.
pub fn parse_point(text: &str, probe_depth: u32) -> Result<Point, PointError> {
    let trimmed = text.trim();
    let Some(rest) = trimmed.strip_prefix("stream") else {
        return Ok(Point::finite(crate::word::parse_word(trimmed)?));
    };
    let Some((base, tail)) = rest.split_once("::") else {
        return Err(PointError::InvalidStream("expected `::` after the base word".into()));
    };
    let mut tail = tail.trim();
    let mut reduce_blocks = false;
    if let Some(t) = tail.strip_suffix("reduced") {
        reduce_blocks = true;
        tail = t.trim_end();
    }
    let mut start = None;
    if let Some((tmpl, from)) = tail.rsplit_once(" from ") {
        let k = from
            .trim()
            .parse::<u32>()
            .map_err(|_| PointError::InvalidStream(format!("bad start level `{}`", from.trim())))?;
        start = Some(k);
        tail = tmpl;
    }
    let base = crate::word::parse_word(base.trim())?;
    let block = parse_template(tail.trim())?;
    let mut point = Point::stream(base, block, start, probe_depth)?;
    if let Presentation::Stream(s) = &mut point.presentation {
        s.reduce_blocks = reduce_blocks;
    }
    Ok(point)
}

/// Answer of the `G_∞` membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteStage {
    /// Projections are constant from this level on.
    Yes(u32),
    NoUpToDepth,
}

/// An element of `G`, presented by any representative point.
#[derive(Clone, Debug)]
pub struct GroupPoint {
    rep: Point,
    // reduced word of a finite representative
    reduced: Option<GroupWord>,
}

impl PartialEq for GroupPoint {
    fn eq(&self, other: &Self) -> bool {
        match (&self.reduced, &other.reduced) {
            (Some(a), Some(b)) => a == b,
            _ => self.rep == other.rep,
        }
    }
}

impl Eq for GroupPoint {}

impl std::hash::Hash for GroupPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.reduced {
            Some(g) => g.hash(state),
            None => self.rep.hash(state),
        }
    }
}

impl GroupPoint {
    pub fn new(rep: Point) -> GroupPoint {
        let reduced = rep.as_finite().map(MonoidWord::reduce);
        GroupPoint { rep, reduced }
    }

    pub fn finite(word: MonoidWord) -> GroupPoint {
        GroupPoint::new(Point::finite(word))
    }

    /// The embedding `G_n -> G`.
    pub fn embed(g: &GroupWord) -> GroupPoint {
        GroupPoint {
            rep: Point::finite(g.as_word().clone()),
            reduced: Some(g.clone()),
        }
    }

    pub fn identity() -> GroupPoint {
        GroupPoint::embed(&GroupWord::identity())
    }

    pub fn representative(&self) -> &Point {
        &self.rep
    }

    /// Reduced word, when the representative is finite.
    pub fn as_finite(&self) -> Option<&GroupWord> {
        self.reduced.as_ref()
    }

    pub fn probe_depth(&self) -> Option<u32> {
        self.rep.probe_depth()
    }

    /// `Π_N(g) = q_N(R_N(x))` for any representative `x`.
    pub fn project(&self, level: u32) -> Result<GroupWord, PointError> {
        match &self.reduced {
            Some(g) => Ok(g.project(level)),
            None => Ok(self.rep.word_at(level)?.reduce()),
        }
    }

    /// `φ(g) = (Π_1(g), ..., Π_depth(g))`.
    pub fn phi(&self, depth: u32) -> Result<Vec<GroupWord>, PointError> {
        (1..=depth).map(|n| self.project(n)).collect()
    }

    /// Whether `φ(g)` is eventually constant, i.e. `g ∈ G_∞`.
    ///
    /// For finite representatives the answer is exact. For streams the tail
    /// law is exact too: past the settled level each block contributes its
    /// reduced power of `x_n`, so the projections stop changing iff every
    /// later block has zero exponent sum. That sum is a polynomial in `n` of
    /// bounded degree, so checking enough consecutive levels decides it.
    pub fn finite_stage(&self, depth: u32) -> Result<FiniteStage, PointError> {
        if let Some(g) = &self.reduced {
            return Ok(FiniteStage::Yes(g.level()));
        }
        let Presentation::Stream(s) = self.rep.presentation() else {
            unreachable!("finite presentations carry a reduced word");
        };
        let settled = s.settled_level();
        let probe = self.rep.probe_depth().unwrap_or(u32::MAX);
        if settled > depth.min(probe) {
            return Ok(FiniteStage::NoUpToDepth);
        }
        let samples = s.block.param_degree() + 1;
        for k in 1..=samples {
            if s.block_exponent(settled + k)? != 0 {
                return Ok(FiniteStage::NoUpToDepth);
            }
        }
        Ok(FiniteStage::Yes(self.project(settled)?.level()))
    }

    /// The minimal representative `σ(g)`, the limit of the reduced
    /// representatives of `Π_n(g)`.
    pub fn sigma(&self, depth: u32) -> Result<Point, PointError> {
        if let Some(g) = &self.reduced {
            return Ok(Point::finite(g.as_word().clone()));
        }
        let Presentation::Stream(s) = self.rep.presentation() else {
            unreachable!("finite presentations carry a reduced word");
        };
        let settled = s.settled_level();
        let probe = self.rep.probe_depth().unwrap_or(u32::MAX);
        if settled > depth || settled > probe {
            // level-1 words may still change through cancellations in the
            // unmaterialized part of the base
            return Err(PointError::StabilizationNotDetected {
                level: 1,
                depth,
                needed: settled,
            });
        }
        let base: MonoidWord = self.rep.word_at(settled)?.reduce().into();
        Ok(Point {
            presentation: Presentation::Stream(Stream {
                base,
                block: s.block.clone(),
                start: settled + 1,
                reduce_blocks: true,
            }),
            probe_depth: self.rep.probe_depth(),
        })
    }

    /// `Blowup(k) = Π_N^{-1} Π_N(k)` with `N` minimal such that `k ∈ G_N`.
    /// The identity uses level 1.
    pub fn blowup(&self, depth: u32) -> Result<Cylinder, PointError> {
        match self.finite_stage(depth)? {
            FiniteStage::Yes(level) => {
                let level = level.max(1);
                Cylinder::new(level, self.project(level)?)
            }
            FiniteStage::NoUpToDepth => Err(PointError::NotFiniteStage),
        }
    }

    /// Projections agree at every level up to `depth`.
    pub fn equal_up_to(&self, other: &GroupPoint, depth: u32) -> Result<bool, PointError> {
        if let (Some(a), Some(b)) = (&self.reduced, &other.reduced) {
            if depth >= a.level().max(b.level()) {
                return Ok(a == b);
            }
        }
        for n in 1..=depth {
            if self.project(n)? != other.project(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl From<GroupWord> for GroupPoint {
    fn from(g: GroupWord) -> Self {
        GroupPoint::embed(&g)
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reduced {
            Some(g) => g.fmt(f),
            None => self.rep.fmt(f),
        }
    }
}

/// The basic clopen set `{g ∈ G : Π_level(g) = base}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    level: u32,
    base: GroupWord,
}

impl Cylinder {
    pub fn new(level: u32, base: GroupWord) -> Result<Cylinder, PointError> {
        if level == 0 || base.level() > level {
            return Err(PointError::InvalidCylinder {
                level,
                base: base.to_string(),
            });
        }
        Ok(Cylinder { level, base })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base(&self) -> &GroupWord {
        &self.base
    }

    pub fn contains_point(&self, g: &GroupPoint) -> Result<bool, PointError> {
        Ok(g.project(self.level)? == self.base)
    }

    /// `self ⊇ other`, decided exactly from the level and base data.
    pub fn contains(&self, other: &Cylinder) -> bool {
        self.level <= other.level && other.base.project(self.level) == self.base
    }

    /// Cylinders are nested or disjoint, so the intersection is one of them.
    pub fn intersect(&self, other: &Cylinder) -> Option<Cylinder> {
        if self.contains(other) {
            Some(other.clone())
        } else if other.contains(self) {
            Some(self.clone())
        } else {
            None
        }
    }

    pub fn is_disjoint(&self, other: &Cylinder) -> bool {
        self.intersect(other).is_none()
    }

    /// The embedded base, the order-minimum of the cylinder.
    pub fn min_point(&self) -> GroupPoint {
        GroupPoint::embed(&self.base)
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyl({}; {})", self.level, self.base)
    }
}

/// `cyl_contains(C, D)`: whether `C ⊇ D`.
pub fn cyl_contains(c: &Cylinder, d: &Cylinder) -> bool {
    c.contains(d)
}

/// `cyl_min(C)`.
pub fn cyl_min(c: &Cylinder) -> GroupPoint {
    c.min_point()
}

/// The bonding map `r_n : G_{n+1} -> G_n`.
pub fn induced_r(g: &GroupWord, n: u32) -> GroupWord {
    g.project(n)
}

/// The embedding `j_n : G_n -> G_{n+1}`; returns `None` if `g` is not in
/// `G_n`.
pub fn induced_j(g: &GroupWord, n: u32) -> Option<GroupWord> {
    (g.level() <= n).then(|| g.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn gp(s: &str) -> GroupPoint {
        GroupPoint::new(parse_point(s, 8).unwrap())
    }

    fn g(s: &str) -> GroupWord {
        parse_word(s).unwrap().reduce()
    }

    #[test]
    fn projection_examples() {
        assert!(gp("x1 x5 X1").project(1).unwrap().is_identity());
        for n in 0..6 {
            assert!(gp("e").project(n).unwrap().is_identity());
        }
        assert!(gp("(x1 x3 X1 x3)^2 x2").project(1).unwrap().is_identity());
    }

    #[test]
    fn phi_examples() {
        let e = GroupWord::identity();
        assert_eq!(gp("e").phi(3).unwrap(), vec![e.clone(), e.clone(), e]);
        assert_eq!(gp("x1 x2").phi(3).unwrap(), vec![g("x1"), g("x1 x2"), g("x1 x2")]);
        assert_eq!(
            gp("stream e :: x%n").phi(3).unwrap(),
            vec![g("x1"), g("x1 x2"), g("x1 x2 x3")]
        );
    }

    #[test]
    fn finite_stage_examples() {
        assert_eq!(gp("e").finite_stage(5).unwrap(), FiniteStage::Yes(0));
        assert_eq!(gp("x1 x2").finite_stage(5).unwrap(), FiniteStage::Yes(2));
        assert_eq!(gp("x1 x3 X3").finite_stage(5).unwrap(), FiniteStage::Yes(1));
        assert_eq!(gp("stream e :: x%n").finite_stage(6).unwrap(), FiniteStage::NoUpToDepth);
        // every block cancels, so this stream is the identity of G
        assert_eq!(gp("stream x1 :: x%n X%n").finite_stage(6).unwrap(), FiniteStage::Yes(1));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(gp("e").sigma(4).unwrap(), Point::finite(MonoidWord::empty()));
        let s = gp("x1 x5 X1").sigma(6).unwrap();
        assert_eq!(s, Point::finite(parse_word("x1 x5 X1").unwrap()));
        assert_eq!(s.word_at(1).unwrap(), parse_word("x1 X1").unwrap());
        assert_eq!(gp("x1 x2 X2 X1").sigma(4).unwrap(), Point::finite(MonoidWord::empty()));
    }

    #[test]
    fn sigma_of_stream_reduces_levelwise() {
        let p = gp("stream x1 x2 X2 :: x%n X%n x%n");
        let s = GroupPoint::new(p.sigma(8).unwrap());
        for n in 1..=8 {
            let expected = p.representative().word_at(n).unwrap().reduce();
            assert_eq!(
                s.representative().word_at(n).unwrap(),
                MonoidWord::from(expected.clone())
            );
            assert_eq!(s.project(n).unwrap(), expected);
        }
    }

    #[test]
    fn sigma_requires_materialization_of_the_base() {
        let p = GroupPoint::new(parse_point("stream x1 x6 X1 :: x%n", 10).unwrap());
        assert!(matches!(
            p.sigma(4),
            Err(PointError::StabilizationNotDetected { needed: 6, .. })
        ));
        assert!(p.sigma(6).is_ok());
    }

    #[test]
    fn stream_depth_is_enforced() {
        let p = GroupPoint::new(parse_point("stream e :: x%n", 3).unwrap());
        assert!(p.project(3).is_ok());
        assert_eq!(
            p.project(4),
            Err(PointError::DepthExceeded {
                requested: 4,
                probe_depth: 3
            })
        );
    }

    #[test]
    fn stream_literals_round_trip() {
        for text in ["stream e :: x%n from 1", "stream x1 X2 :: (x%n)^2 X%n from 3 reduced"] {
            let p = parse_point(text, 7).unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert!(parse_point("stream e :: x1", 4).is_err());
        assert!(parse_point("stream e x%n", 4).is_err());
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(gp("x2").blowup(4).unwrap(), Cylinder::new(2, g("x2")).unwrap());
        assert_eq!(gp("e").blowup(4).unwrap(), Cylinder::new(1, g("e")).unwrap());
        assert_eq!(gp("x1 x2").blowup(4).unwrap(), Cylinder::new(2, g("x1 x2")).unwrap());
        assert_eq!(gp("stream e :: x%n").blowup(6), Err(PointError::NotFiniteStage));
    }

    #[test]
    fn induced_maps() {
        assert!(induced_r(&g("x1 x2 X1"), 1).is_identity());
        assert_eq!(induced_j(&g("x1"), 1), Some(g("x1")));
        assert_eq!(induced_j(&g("x2"), 1), None);
    }

    #[test]
    fn cylinder_containment_examples() {
        let c1e = Cylinder::new(1, g("e")).unwrap();
        let c1x1 = Cylinder::new(1, g("x1")).unwrap();
        let c2x2 = Cylinder::new(2, g("x2")).unwrap();
        assert!(cyl_contains(&c1e, &c2x2));
        assert!(!cyl_contains(&c1x1, &c2x2));
        assert!(cyl_contains(&c2x2, &c2x2));
        assert!(Cylinder::new(1, g("x2")).is_err());
    }

    #[test]
    fn cylinder_min_examples() {
        assert_eq!(cyl_min(&Cylinder::new(1, g("x1")).unwrap()), gp("x1"));
        assert_eq!(cyl_min(&Cylinder::new(1, g("e")).unwrap()), gp("e"));
        assert_eq!(cyl_min(&Cylinder::new(2, g("x1 x2")).unwrap()), gp("x1 x2"));
    }

    #[test]
    fn coherence_of_streams() {
        let p = parse_point("stream x3 X1 :: (x%n)^2 X%n", 9).unwrap();
        for n in 0..9 {
            assert_eq!(p.word_at(n + 1).unwrap().retract(n), p.word_at(n).unwrap());
        }
    }
}
