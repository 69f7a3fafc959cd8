//! The lexical order on `X_∞` and the induced order on `G`.
//!
//! Points of `X_∞` are compared at the first level where their words differ.
//! There the two words share the previous level as context, and are
//! compared first by their reductions (the reduction of the context is the
//! least, the rest in shortlex order), then as raw words by length and
//! letters. Elements of `G` are compared through their minimal
//! representatives.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::point::{GroupPoint, Point, PointError};
use crate::word::{shortlex_cmp, GroupWord, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("empty set has no minimum")]
    EmptySet,
    #[error("{left} and {right} agree up to depth {depth}; the comparison is undecided")]
    Undecided { left: String, right: String, depth: u32 },
    #[error(transparent)]
    Point(#[from] PointError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Less,
    EqualUpToDepth,
    Greater,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderVerdict {
    pub outcome: Outcome,
    /// First level at which the words differ.
    pub decided_at: Option<u32>,
}

impl OrderVerdict {
    fn decided(ordering: Ordering, level: u32) -> OrderVerdict {
        let outcome = match ordering {
            Ordering::Less => Outcome::Less,
            Ordering::Greater => Outcome::Greater,
            Ordering::Equal => unreachable!("distinct words never compare equal"),
        };
        OrderVerdict {
            outcome,
            decided_at: Some(level),
        }
    }

    fn undecided() -> OrderVerdict {
        OrderVerdict {
            outcome: Outcome::EqualUpToDepth,
            decided_at: None,
        }
    }

    pub fn is_less(&self) -> bool {
        self.outcome == Outcome::Less
    }

    pub fn symbol(&self) -> &'static str {
        match self.outcome {
            Outcome::Less => "<",
            Outcome::EqualUpToDepth => "=",
            Outcome::Greater => ">",
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.outcome, self.decided_at) {
            (Outcome::EqualUpToDepth, _) | (_, None) => f.write_str(self.symbol()),
            (_, Some(level)) => write!(f, "{} at level {level}", self.symbol()),
        }
    }
}

/// Compares two members of the fiber `X_n(context)`, i.e. words whose
/// retraction to level `n - 1` is a common context word.
pub fn compare_in_fiber(context: &MonoidWord, a: &MonoidWord, b: &MonoidWord) -> Ordering {
    let (qa, qb) = (a.reduce(), b.reduce());
    if qa != qb {
        let qc = context.reduce();
        if qa == qc {
            return Ordering::Less;
        }
        if qb == qc {
            return Ordering::Greater;
        }
        return shortlex_cmp(&qa, &qb);
    }
    a.cmp(b)
}

/// `cmp_X`: the lexical order on `X_∞`, inspected up to `depth`.
pub fn cmp_x(x: &Point, y: &Point, depth: u32) -> Result<OrderVerdict, PointError> {
    let stable = match (x.as_finite(), y.as_finite()) {
        (Some(a), Some(b)) => Some(a.level().max(b.level())),
        _ => None,
    };
    let mut context = MonoidWord::empty();
    for n in 1..=depth {
        if stable.is_some_and(|s| n > s) {
            break;
        }
        let (a, b) = (x.word_at(n)?, y.word_at(n)?);
        if a != b {
            return Ok(OrderVerdict::decided(compare_in_fiber(&context, &a, &b), n));
        }
        context = a;
    }
    Ok(OrderVerdict::undecided())
}

/// `cmp_G`: `g < h` iff `σ(g) < σ(h)`.
pub fn cmp_g(g: &GroupPoint, h: &GroupPoint, depth: u32) -> Result<OrderVerdict, PointError> {
    cmp_x(&g.sigma(depth)?, &h.sigma(depth)?, depth)
}

/// Total comparison for pairs that can be decided. Two finite-stage
/// elements are always compared exactly, raising the depth to their levels.
pub fn decide(g: &GroupPoint, h: &GroupPoint, depth: u32) -> Result<Ordering, OrderError> {
    let exact = match (g.as_finite(), h.as_finite()) {
        (Some(a), Some(b)) => Some(a.level().max(b.level())),
        _ => None,
    };
    let depth = exact.map_or(depth, |level| depth.max(level));
    let verdict = cmp_g(g, h, depth)?;
    match verdict.outcome {
        Outcome::Less => Ok(Ordering::Less),
        Outcome::Greater => Ok(Ordering::Greater),
        Outcome::EqualUpToDepth if exact.is_some() => Ok(Ordering::Equal),
        Outcome::EqualUpToDepth => Err(OrderError::Undecided {
            left: g.to_string(),
            right: h.to_string(),
            depth,
        }),
    }
}

/// `min_of`: the least element of a finite set.
pub fn min_of(set: &[GroupPoint], depth: u32) -> Result<&GroupPoint, OrderError> {
    let (first, rest) = set.split_first().ok_or(OrderError::EmptySet)?;
    let mut min = first;
    for g in rest {
        if decide(g, min, depth)? == Ordering::Less {
            min = g;
        }
    }
    Ok(min)
}

/// Sort key of a point truncated at `depth`: comparing keys
/// lexicographically agrees with `cmp_x` up to that depth.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey(Vec<(bool, GroupWord, MonoidWord)>);

impl OrderKey {
    pub fn of(x: &Point, depth: u32) -> Result<OrderKey, PointError> {
        let mut key = Vec::with_capacity(depth as usize);
        let mut previous = GroupWord::identity();
        for n in 1..=depth {
            let word = x.word_at(n)?;
            let reduced = word.reduce();
            // the reduced context is the declared minimum of its fiber
            key.push((reduced != previous, reduced.clone(), word));
            previous = reduced;
        }
        Ok(OrderKey(key))
    }

    /// Key of a reduced word, which is its own minimal representative.
    pub fn of_group_word(g: &GroupWord, depth: u32) -> OrderKey {
        OrderKey::of(&Point::finite(g.as_word().clone()), depth).expect("finite points have no probe depth")
    }
}
