//! A finite fragment of `G` over which set-level quantifiers are evaluated.
//!
//! The universe holds every reduced word of level at most `L` and length at
//! most `len`, sorted by the order of `G`. Each element knows the rank of
//! its projection at every level, so cylinder membership is a table lookup
//! and the extreme members of a term are found by scanning a presorted
//! member list.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clopen::{ClopenExpr, Term};
use crate::convergence::{default_catalog, Witness};
use crate::order::{decide, OrderError, OrderKey};
use crate::point::{Cylinder, GroupPoint, PointError};
use crate::word::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("expression uses level {needed} but depth is {depth}")]
    DepthExceeded { needed: u32, depth: u32 },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Point(#[from] PointError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bad universe spec `{0}`; expected L=<n>,len=<n>")]
pub struct UniverseSpecError(String);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniverseSpec {
    pub max_level: u32,
    pub max_len: usize,
}

impl Default for UniverseSpec {
    fn default() -> Self {
        UniverseSpec {
            max_level: 3,
            max_len: 6,
        }
    }
}

impl FromStr for UniverseSpec {
    type Err = UniverseSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UniverseSpecError(s.to_string());
        let mut level = None;
        let mut len = None;
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "L" => level = Some(value.trim().parse().map_err(|_| bad())?),
                "len" => len = Some(value.trim().parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        match (level, len) {
            (Some(max_level), Some(max_len)) if max_level >= 1 => Ok(UniverseSpec { max_level, max_len }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for UniverseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={},len={}", self.max_level, self.max_len)
    }
}

pub struct Universe {
    spec: UniverseSpec,
    elements: Vec<GroupWord>,
    ranks: HashMap<GroupWord, u32>,
    // proj[r * L + (N - 1)] is the rank of Π_N(elements[r])
    proj: Vec<u32>,
    members: HashMap<(u32, u32), Vec<u32>>,
    identity: Vec<u32>,
    extras: Vec<GroupPoint>,
    witnesses: Vec<Witness>,
}

impl Universe {
    pub fn new(spec: UniverseSpec) -> Universe {
        let levels = spec.max_level;
        let mut keyed: Vec<(OrderKey, GroupWord)> = GroupWord::all_up_to(levels, spec.max_len)
            .into_iter()
            .map(|g| (OrderKey::of_group_word(&g, levels), g))
            .collect();
        keyed.sort();
        let elements: Vec<GroupWord> = keyed.into_iter().map(|(_, g)| g).collect();
        let ranks: HashMap<GroupWord, u32> = elements
            .iter()
            .enumerate()
            .map(|(r, g)| (g.clone(), r as u32))
            .collect();
        let mut proj = Vec::with_capacity(elements.len() * levels as usize);
        let mut members: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (r, g) in elements.iter().enumerate() {
            for n in 1..=levels {
                let base = ranks[&g.project(n)];
                proj.push(base);
                members.entry((n, base)).or_default().push(r as u32);
            }
        }
        let identity = (0..elements.len() as u32).collect();
        Universe {
            spec,
            elements,
            ranks,
            proj,
            members,
            identity,
            extras: Vec::new(),
            witnesses: default_catalog(),
        }
    }

    pub fn spec(&self) -> UniverseSpec {
        self.spec
    }

    pub fn max_level(&self) -> u32 {
        self.spec.max_level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> &[GroupWord] {
        &self.elements
    }

    pub fn element(&self, rank: usize) -> &GroupWord {
        &self.elements[rank]
    }

    pub fn rank_of(&self, g: &GroupWord) -> Option<usize> {
        self.ranks.get(g).map(|&r| r as usize)
    }

    pub fn extras(&self) -> &[GroupPoint] {
        &self.extras
    }

    pub fn add_extra(&mut self, g: GroupPoint) {
        self.extras.push(g);
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn set_witnesses(&mut self, witnesses: Vec<Witness>) {
        self.witnesses = witnesses;
    }

    pub fn add_witness(&mut self, witness: Witness) {
        self.witnesses.push(witness);
    }

    /// Rank of `Π_level(elements[rank])`, for `1 <= level <= L`.
    pub fn projection_rank(&self, rank: usize, level: u32) -> usize {
        let levels = self.spec.max_level as usize;
        self.proj[rank * levels + level as usize - 1] as usize
    }

    /// Ranks of the members of a cylinder, in increasing order.
    pub fn cylinder_members(&self, c: &Cylinder) -> &[u32] {
        let Some(&base) = self.ranks.get(c.base()) else {
            return &[];
        };
        if c.level() <= self.spec.max_level {
            self.members.get(&(c.level(), base)).map_or(&[], Vec::as_slice)
        } else {
            // above L every element is its own projection
            let at = base as usize;
            &self.identity[at..=at]
        }
    }

    pub fn cylinder_contains_rank(&self, c: &Cylinder, rank: usize) -> bool {
        let Some(&base) = self.ranks.get(c.base()) else {
            return false;
        };
        if c.level() <= self.spec.max_level {
            self.projection_rank(rank, c.level()) == base as usize
        } else {
            rank == base as usize
        }
    }

    pub fn term_contains_rank(&self, t: &Term, rank: usize) -> bool {
        self.cylinder_contains_rank(&t.cyl, rank) && !t.minus.iter().any(|d| self.cylinder_contains_rank(d, rank))
    }

    pub fn contains_rank(&self, e: &ClopenExpr, rank: usize) -> bool {
        e.terms().iter().any(|t| self.term_contains_rank(t, rank))
    }

    /// Ranks of all universe members of `e`, increasing.
    pub fn members_of(&self, e: &ClopenExpr) -> Vec<usize> {
        let mut out: Vec<usize> = e
            .terms()
            .iter()
            .flat_map(|t| {
                self.cylinder_members(&t.cyl)
                    .iter()
                    .map(|&r| r as usize)
                    .filter(move |&r| !t.minus.iter().any(|d| self.cylinder_contains_rank(d, r)))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_rank(&self, e: &ClopenExpr) -> Option<usize> {
        e.terms()
            .iter()
            .filter_map(|t| {
                self.cylinder_members(&t.cyl)
                    .iter()
                    .rev()
                    .map(|&r| r as usize)
                    .find(|&r| !t.minus.iter().any(|d| self.cylinder_contains_rank(d, r)))
            })
            .max()
    }

    pub fn min_rank(&self, e: &ClopenExpr) -> Option<usize> {
        e.terms()
            .iter()
            .filter_map(|t| {
                self.cylinder_members(&t.cyl)
                    .iter()
                    .map(|&r| r as usize)
                    .find(|&r| !t.minus.iter().any(|d| self.cylinder_contains_rank(d, r)))
            })
            .min()
    }

    /// Number of elements strictly below `b`.
    pub fn count_below(&self, b: &GroupPoint, depth: u32) -> Result<usize, OrderError> {
        self.partition(b, depth, |o| o == Ordering::Less)
    }

    /// Number of elements below or equal to `b`.
    pub fn count_at_most(&self, b: &GroupPoint, depth: u32) -> Result<usize, OrderError> {
        self.partition(b, depth, |o| o != Ordering::Greater)
    }

    fn partition(&self, b: &GroupPoint, depth: u32, below: impl Fn(Ordering) -> bool) -> Result<usize, OrderError> {
        let (mut lo, mut hi) = (0, self.elements.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if below(decide(&GroupPoint::embed(&self.elements[mid]), b, depth)?) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

/// `member(g, E, depth)`.
pub fn member(g: &GroupPoint, e: &ClopenExpr, depth: u32) -> Result<bool, TopologyError> {
    let needed = e.max_level();
    if needed > depth {
        return Err(TopologyError::DepthExceeded { needed, depth });
    }
    Ok(e.contains(g)?)
}

/// Evaluation context for set comparisons: the universe, the points the
/// caller tracks explicitly, and the comparison depth.
pub struct Sweep<'u> {
    pub universe: &'u Universe,
    pub tracked: Vec<GroupPoint>,
    pub depth: u32,
}

impl<'u> Sweep<'u> {
    pub fn new(universe: &'u Universe, tracked: Vec<GroupPoint>, depth: u32) -> Sweep<'u> {
        Sweep {
            universe,
            tracked,
            depth,
        }
    }

    pub fn track(&mut self, g: &GroupPoint) {
        if !self.tracked.contains(g) {
            self.tracked.push(g.clone());
        }
    }

    fn outside_points(&self) -> impl Iterator<Item = &GroupPoint> {
        self.tracked.iter().chain(self.universe.extras())
    }

    fn extreme(&self, e: &ClopenExpr, want: Ordering) -> Result<Option<GroupPoint>, TopologyError> {
        let rank = match want {
            Ordering::Greater => self.universe.max_rank(e),
            _ => self.universe.min_rank(e),
        };
        let mut best = rank.map(|r| GroupPoint::embed(self.universe.element(r)));
        for g in self.outside_points() {
            if !e.contains(g)? {
                continue;
            }
            let better = match &best {
                None => true,
                Some(current) => decide(g, current, self.depth)? == want,
            };
            if better {
                best = Some(g.clone());
            }
        }
        Ok(best)
    }

    /// Largest member of `e` among universe and tracked points.
    pub fn max_member(&self, e: &ClopenExpr) -> Result<Option<GroupPoint>, TopologyError> {
        self.extreme(e, Ordering::Greater)
    }

    pub fn min_member(&self, e: &ClopenExpr) -> Result<Option<GroupPoint>, TopologyError> {
        self.extreme(e, Ordering::Less)
    }

    /// `set_less(E, b)`: every known member of `E` is below `b`.
    pub fn set_less(&self, e: &ClopenExpr, b: &GroupPoint) -> Result<bool, TopologyError> {
        Ok(match self.max_member(e)? {
            None => true,
            Some(top) => decide(&top, b, self.depth)? == Ordering::Less,
        })
    }

    /// `{a} < E`: every known member of `E` is above `a`.
    pub fn set_above(&self, a: &GroupPoint, e: &ClopenExpr) -> Result<bool, TopologyError> {
        Ok(match self.min_member(e)? {
            None => true,
            Some(bottom) => decide(a, &bottom, self.depth)? == Ordering::Less,
        })
    }

    /// Every known member of `lower` is below every known member of `upper`.
    pub fn sets_ordered(&self, lower: &ClopenExpr, upper: &ClopenExpr) -> Result<bool, TopologyError> {
        match (self.max_member(lower)?, self.min_member(upper)?) {
            (Some(top), Some(bottom)) => Ok(decide(&top, &bottom, self.depth)? == Ordering::Less),
            _ => Ok(true),
        }
    }

    /// Whether `a` and `b` share a known member.
    pub fn meets(&self, a: &ClopenExpr, b: &ClopenExpr) -> Result<bool, TopologyError> {
        if !self.universe.members_of(&a.intersect(b)).is_empty() {
            return Ok(true);
        }
        for g in self.outside_points() {
            if a.contains(g)? && b.contains(g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `set_less` for an explicit finite set.
pub fn finite_set_less(set: &[GroupPoint], b: &GroupPoint, depth: u32) -> Result<bool, OrderError> {
    for g in set {
        if decide(g, b, depth)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}
