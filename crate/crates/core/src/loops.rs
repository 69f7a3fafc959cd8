//! Loop itineraries in the Hawaiian earring and their classes in `G`.
//!
//! An itinerary lists the full signed traversals of a loop, one letter per
//! circle visited. Two loops are path homotopic iff their itineraries have
//! the same reduced projection at every level.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clopen::ClopenExpr;
use crate::point::{Cylinder, GroupPoint};
use crate::template::ParseError;
use crate::word::{parse_word, GroupWord, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("deletion search exceeded its budget of {budget} words")]
pub struct BudgetExceeded {
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoopItinerary(MonoidWord);

impl LoopItinerary {
    pub fn new(word: MonoidWord) -> LoopItinerary {
        LoopItinerary(word)
    }

    pub fn word(&self) -> &MonoidWord {
        &self.0
    }

    /// Traverse `self`, then `other`.
    pub fn concat(&self, other: &LoopItinerary) -> LoopItinerary {
        LoopItinerary(self.0.concat(&other.0))
    }
}

impl FromStr for LoopItinerary {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s).map(LoopItinerary)
    }
}

impl fmt::Display for LoopItinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `F`: the class of a loop in `G`.
pub fn f_map(l: &LoopItinerary) -> GroupPoint {
    GroupPoint::finite(l.0.clone())
}

/// Path-homotopy test. Projections of finite itineraries are constant
/// past their levels, so comparing up to the larger level is exact.
pub fn loop_eq(f: &LoopItinerary, g: &LoopItinerary) -> bool {
    let top = f.0.level().max(g.0.level());
    (1..=top).all(|n| f.0.retract(n).reduce() == g.0.retract(n).reduce())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    /// Every word reachable from the retracted itinerary.
    pub words: BTreeSet<MonoidWord>,
    /// Reachable words admitting no further deletion.
    pub endpoints: BTreeSet<MonoidWord>,
}

/// `Σ(β, N)`: words reached from `R_N(β)` by deleting inessential subloops.
pub fn sigma_set(beta: &LoopItinerary, level: u32, budget: usize) -> Result<SigmaSet, BudgetExceeded> {
    let start = beta.0.retract(level);
    let mut words = BTreeSet::from([start.clone()]);
    let mut endpoints = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let next = w.delete_inessential();
        if next.is_empty() {
            endpoints.insert(w);
            continue;
        }
        for v in next {
            if words.insert(v.clone()) {
                if words.len() > budget {
                    return Err(BudgetExceeded { budget });
                }
                queue.push_back(v);
            }
        }
    }
    Ok(SigmaSet { words, endpoints })
}

/// `w(k) = (x1 x_{k+1} X1 x_{k+1})^k x_k`.
pub fn w(k: u32) -> MonoidWord {
    assert!(k >= 1, "w(k) needs k >= 1");
    format!("(x1 x{0} X1 x{0})^{k} x{k}", k + 1)
        .parse()
        .expect("fixture grammar is valid")
}

/// The small-index retraction: `Π_n(g)` at the least `n` where it is
/// nontrivial. `None` for the identity.
pub fn naive_retraction(g: &GroupWord) -> Option<(u32, GroupWord)> {
    (1..=g.level()).find_map(|n| {
        let p = g.project(n);
        (!p.is_identity()).then_some((n, p))
    })
}

/// `∪ Cyl(n_b; R(b))` over `b ∈ B`, the thickening that ignores limits.
pub fn naive_thickening(b: &[GroupWord]) -> ClopenExpr {
    b.iter()
        .filter_map(naive_retraction)
        .map(|(n, base)| ClopenExpr::cylinder(Cylinder::new(n, base).expect("projection lies in its level")))
        .fold(ClopenExpr::empty(), |acc, c| acc.union(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LoopItinerary {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GroupWord {
        parse_word(s).unwrap().reduce()
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_map(&l("x1 X1")), GroupPoint::identity());
        assert_eq!(f_map(&l("x1 x2 X2")), GroupPoint::embed(&g("x1")));
        let f = f_map(&LoopItinerary::new(w(3)));
        assert!(f.project(1).unwrap().is_identity());
        assert_eq!(f.project(3).unwrap(), g("x3"));
        assert_eq!(f.project(4).unwrap(), g("(x1 x4 X1 x4)^3 x3"));
    }

    #[test]
    fn loop_eq_examples() {
        assert!(loop_eq(&l("x1 X1"), &l("e")));
        assert!(!loop_eq(&l("x1 x2 X1"), &l("x2")));
        assert!(loop_eq(&l("x1 x2 X2 X1 x3"), &l("x3")));
    }

    #[test]
    fn sigma_set_examples() {
        let s = sigma_set(&l("x1 X1"), 1, 100).unwrap();
        assert_eq!(s.words, BTreeSet::from([l("x1 X1").0, MonoidWord::empty()]));
        let s = sigma_set(&l("x1 x2 X2 X1"), 1, 100).unwrap();
        assert_eq!(s.endpoints, BTreeSet::from([MonoidWord::empty()]));
        assert_eq!(sigma_set(&l("(x1 X1)^6"), 1, 3), Err(BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn fixture_words() {
        assert_eq!(w(2), parse_word("x1 x3 X1 x3 x1 x3 X1 x3 x2").unwrap());
        assert_eq!(naive_retraction(&w(3).reduce()), Some((3, g("x3"))));
        assert_eq!(naive_retraction(&g("x1 x2")), Some((1, g("x1"))));
        assert_eq!(naive_retraction(&GroupWord::identity()), None);
    }
}
