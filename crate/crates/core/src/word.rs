//! Letters, unreduced monoid words, and reduced group words.
//!
//! A [`MonoidWord`] is an element of the free monoid on the letters
//! `x1, X1, x2, X2, ...` (capital letters are inverses). No cancellation is
//! ever applied to a monoid word. A [`GroupWord`] is a maximally reduced word,
//! i.e. an element of a finite-rank free group.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::template::{self, ParseError};

/// One signed traversal of the generator `x_index`.
///
/// Letters are ordered `x1 < X1 < x2 < X2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: u32,
    inverse: bool,
}

impl Letter {
    /// Builds a letter. Returns `None` for index 0.
    pub fn new(index: u32, inverse: bool) -> Option<Letter> {
        (index >= 1).then_some(Letter { index, inverse })
    }

    /// The positive letter `x_index`.
    ///
    /// Panics if `index == 0`.
    pub fn x(index: u32) -> Letter {
        Letter::new(index, false).expect("generator index must be at least 1")
    }

    /// The negative letter `X_index`.
    ///
    /// Panics if `index == 0`.
    pub fn inv(index: u32) -> Letter {
        Letter::new(index, true).expect("generator index must be at least 1")
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// +1 for `x_i`, -1 for `X_i`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.inverse { 'X' } else { 'x' };
        write!(f, "{head}{}", self.index)
    }
}

/// A finite unreduced word; an element of the monoid `X_n` for any `n` at
/// least its level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonoidWord {
    letters: Vec<Letter>,
}

impl MonoidWord {
    pub fn empty() -> MonoidWord {
        MonoidWord::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> MonoidWord {
        MonoidWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring; 0 for the empty word.
    pub fn level(&self) -> u32 {
        self.letters.iter().map(|l| l.index).max().unwrap_or(0)
    }

    /// Deletes every letter of index greater than `level`.
    pub fn retract(&self, level: u32) -> MonoidWord {
        if self.level() <= level {
            return self.clone();
        }
        MonoidWord {
            letters: self.letters.iter().copied().filter(|l| l.index <= level).collect(),
        }
    }

    /// Free reduction: repeatedly cancels adjacent inverse pairs.
    pub fn reduce(&self) -> GroupWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        GroupWord(MonoidWord { letters: stack })
    }

    /// True when no two adjacent letters are mutual inverses.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        MonoidWord { letters }
    }

    /// Formal inverse: reversed word with every letter inverted.
    pub fn inverse(&self) -> MonoidWord {
        MonoidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn repeat(&self, times: usize) -> MonoidWord {
        MonoidWord {
            letters: self.letters.repeat(times),
        }
    }

    /// `c(w, N)`: the combined number of `x_N` and `X_N` occurrences in the
    /// level-`N` retraction of the word.
    pub fn letter_count(&self, level: u32) -> usize {
        self.letters.iter().filter(|l| l.index == level).count()
    }

    /// Signed count of `x_index` occurrences.
    pub fn exponent_sum(&self, index: u32) -> i64 {
        self.letters.iter().filter(|l| l.index == index).map(|l| l.sign()).sum()
    }

    /// Every word obtained by deleting exactly one nonempty contiguous subword
    /// whose free reduction is the identity.
    pub fn delete_inessential(&self) -> BTreeSet<MonoidWord> {
        let n = self.letters.len();
        let mut out = BTreeSet::new();
        let mut stack: Vec<Letter> = Vec::with_capacity(n);
        for start in 0..n {
            stack.clear();
            for end in start..n {
                let l = self.letters[end];
                match stack.last() {
                    Some(&top) if top.cancels(l) => {
                        stack.pop();
                    }
                    _ => stack.push(l),
                }
                if stack.is_empty() {
                    let mut letters = Vec::with_capacity(n - (end + 1 - start));
                    letters.extend_from_slice(&self.letters[..start]);
                    letters.extend_from_slice(&self.letters[end + 1..]);
                    out.insert(MonoidWord { letters });
                }
            }
        }
        out
    }

    /// Iterates over all monoid words with letters of index at most
    /// `max_level` and length exactly `len`, in length-lex order.
    pub fn all_of_length(max_level: u32, len: usize) -> impl Iterator<Item = MonoidWord> {
        let alphabet = alphabet(max_level);
        let radix = alphabet.len();
        let total = if radix == 0 {
            usize::from(len == 0)
        } else {
            radix.pow(len as u32)
        };
        (0..total).map(move |mut code| {
            let mut letters = vec![Letter::x(1); len];
            for slot in letters.iter_mut().rev() {
                *slot = alphabet[code % radix];
                code /= radix;
            }
            MonoidWord { letters }
        })
    }

    /// All monoid words of length at most `max_len` over indices at most
    /// `max_level`, shortest first.
    pub fn all_up_to(max_level: u32, max_len: usize) -> Vec<MonoidWord> {
        (0..=max_len)
            .flat_map(|len| MonoidWord::all_of_length(max_level, len))
            .collect()
    }
}

/// `x1, X1, x2, X2, ...` up to `max_level`.
pub fn alphabet(max_level: u32) -> Vec<Letter> {
    (1..=max_level).flat_map(|i| [Letter::x(i), Letter::inv(i)]).collect()
}

/// Length first, then letterwise with `x1 < X1 < x2 < ...`.
impl Ord for MonoidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for MonoidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for MonoidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl From<GroupWord> for MonoidWord {
    fn from(g: GroupWord) -> Self {
        g.0
    }
}

/// Parses the word grammar: `e`, or whitespace-separated letters `x<n>` /
/// `X<n>` and groups `( ... )^<k>`.
pub fn parse_word(text: &str) -> Result<MonoidWord, ParseError> {
    template::parse_word(text)
}

/// A maximally reduced word; an element of the free group `G_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(MonoidWord);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord::default()
    }

    /// Wraps an already reduced word; `None` if it contains a cancelling pair.
    pub fn from_reduced(word: MonoidWord) -> Option<GroupWord> {
        word.is_reduced().then_some(GroupWord(word))
    }

    pub fn generator(index: u32) -> GroupWord {
        GroupWord(MonoidWord::from_letters(vec![Letter::x(index)]))
    }

    pub fn as_word(&self) -> &MonoidWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self) -> u32 {
        self.0.level()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        self.0.concat(&other.0).reduce()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.inverse())
    }

    /// The bonding map `r_n : G_{n+1} -> G_n`, i.e. retract then reduce.
    pub fn project(&self, level: u32) -> GroupWord {
        if self.level() <= level {
            self.clone()
        } else {
            self.0.retract(level).reduce()
        }
    }

    /// All reduced words over indices at most `max_level` with length at most
    /// `max_len`, in shortlex order.
    pub fn all_up_to(max_level: u32, max_len: usize) -> Vec<GroupWord> {
        let alphabet = alphabet(max_level);
        let mut out = vec![GroupWord::identity()];
        let mut frontier = vec![GroupWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for g in &frontier {
                let last = g.letters().last().copied();
                for &l in &alphabet {
                    if last.is_some_and(|t| t.cancels(l)) {
                        continue;
                    }
                    let mut letters = g.letters().to_vec();
                    letters.push(l);
                    next.push(GroupWord(MonoidWord::from_letters(letters)));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Shortlex comparison of reduced words: shorter first, then letterwise.
pub fn shortlex_cmp(g: &GroupWord, h: &GroupWord) -> Ordering {
    g.cmp(h)
}
