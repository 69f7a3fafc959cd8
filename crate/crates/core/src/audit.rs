//! Property suites over enumerated and sampled elements.
//!
//! Each suite returns an [`AuditReport`] with the number of cases checked,
//! the number of failures and the first counterexample. The `heg axioms`
//! command and the acceptance tests both run these.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::convergence::{relatively_clopen, Clopenness};
use crate::loops::{f_map, loop_eq, LoopItinerary};
use crate::order::{cmp_g, cmp_x, compare_in_fiber, decide, OrderKey, Outcome};
use crate::point::{Cylinder, GroupPoint, Point};
use crate::separation::{find_monotonicity_break, find_non_minimal_eta, separate, thicken};
use crate::template::parse_template;
use crate::universe::{Sweep, Universe};
use crate::word::{alphabet, shortlex_cmp, GroupWord, Letter, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub example: Option<String>,
}

impl AuditReport {
    fn new(name: impl Into<String>) -> AuditReport {
        AuditReport {
            name: name.into(),
            checked: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checked, {} failed",
            self.name, self.checked, self.failures
        )?;
        if let Some(e) = &self.example {
            write!(f, "; first counterexample: {e}")?;
        }
        Ok(())
    }
}

pub fn random_monoid_word(rng: &mut impl Rng, max_level: u32, max_len: usize) -> MonoidWord {
    let letters = alphabet(max_level);
    let len = rng.gen_range(0..=max_len);
    MonoidWord::from_letters(
        (0..len)
            .map(|_| *letters.choose(rng).expect("nonempty alphabet"))
            .collect(),
    )
}

pub fn random_group_word(rng: &mut impl Rng, max_level: u32, max_len: usize) -> GroupWord {
    random_monoid_word(rng, max_level, max_len).reduce()
}

const BLOCKS: [&str; 6] = ["x%n", "X%n", "x%n x%n", "x%n X%n", "X%n X%n x%n", "(x%n)^2 X%n"];

/// A finite point, or with probability 1/4 a stream.
pub fn random_point(rng: &mut impl Rng, max_level: u32, max_len: usize, probe_depth: u32) -> GroupPoint {
    let base = random_monoid_word(rng, max_level, max_len);
    if rng.gen_ratio(3, 4) {
        return GroupPoint::finite(base);
    }
    let block = parse_template(BLOCKS.choose(rng).expect("nonempty")).expect("valid block");
    let start = base.level() + rng.gen_range(1..=2);
    GroupPoint::new(Point::stream(base, block, Some(start), probe_depth).expect("valid stream"))
}

/// Every maximal chain of inessential deletions ends at the reduction, for
/// all words of length at most `max_len` over indices at most `max_level`.
/// Endpoint sets are memoized by increasing length.
pub fn confluence_exhaustive(max_level: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new(format!("confluence (length <= {max_len}, indices <= {max_level})"));
    let mut endpoint: HashMap<MonoidWord, GroupWord> = HashMap::new();
    for len in 0..=max_len {
        for w in MonoidWord::all_of_length(max_level, len) {
            let reduced = w.reduce();
            let next = w.delete_inessential();
            let ok = if next.is_empty() {
                w.is_reduced()
            } else {
                next.iter().all(|v| endpoint.get(v) == Some(&reduced))
            };
            report.record(ok, || w.to_string());
            endpoint.insert(w, reduced);
        }
    }
    report
}

/// Confluence on random longer words through the full deletion search.
pub fn confluence_sampled(rng: &mut impl Rng, samples: usize, max_level: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new(format!("confluence, sampled (length <= {max_len})"));
    for _ in 0..samples {
        let w = random_monoid_word(rng, max_level, max_len);
        let expected: MonoidWord = w.reduce().into();
        let ok = match crate::loops::sigma_set(&LoopItinerary::new(w.clone()), max_level, 1 << 16) {
            Ok(s) => s.endpoints.len() == 1 && s.endpoints.contains(&expected),
            Err(_) => true,
        };
        report.record(ok, || w.to_string());
    }
    report
}

/// `r_n q_{n+1} = q_n R_n` as word functions, exhaustively.
pub fn reduction_retraction_exhaustive(max_level: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new(format!(
        "r_n q_(n+1) = q_n R_n (length <= {max_len}, indices <= {max_level})"
    ));
    for w in MonoidWord::all_up_to(max_level, max_len) {
        let reduced = w.reduce();
        for n in 0..max_level {
            report.record(reduced.project(n) == w.retract(n).reduce(), || {
                format!("{w} at level {n}")
            });
        }
    }
    report
}

/// `Π_{n-1} = Π_{n-1} Π_n` on sampled points.
pub fn projection_coherence(
    rng: &mut impl Rng,
    samples: usize,
    max_level: u32,
    max_len: usize,
    depth: u32,
) -> AuditReport {
    let mut report = AuditReport::new("projection coherence");
    for _ in 0..samples {
        let g = random_point(rng, max_level, max_len, depth);
        let mut ok = true;
        for n in 1..=depth {
            let (pn, pm) = (
                g.project(n).expect("within depth"),
                g.project(n - 1).expect("within depth"),
            );
            ok &= pn.project(n - 1) == pm;
        }
        report.record(ok, || g.to_string());
    }
    report
}

/// `Π_n ≤ Π_{n+1} ≤ id` on sampled points.
pub fn projection_chain(rng: &mut impl Rng, samples: usize, max_level: u32, max_len: usize, depth: u32) -> AuditReport {
    let mut report = AuditReport::new("projection chain");
    for _ in 0..samples {
        let g = random_point(rng, max_level, max_len, depth);
        let proj: Vec<GroupPoint> = (1..=depth)
            .map(|n| GroupPoint::embed(&g.project(n).expect("within depth")))
            .collect();
        let mut ok = true;
        for (i, p) in proj.iter().enumerate() {
            for q in &proj[i + 1..] {
                ok &= decide(p, q, depth).is_ok_and(|o| o != Ordering::Greater);
            }
            ok &= cmp_g(p, &g, depth).is_ok_and(|v| v.outcome != Outcome::Greater);
        }
        report.record(ok, || g.to_string());
    }
    report
}

/// `R_n(x) ≤ x` in `X_∞` on sampled points.
pub fn retraction_monotone(
    rng: &mut impl Rng,
    samples: usize,
    max_level: u32,
    max_len: usize,
    depth: u32,
) -> AuditReport {
    let mut report = AuditReport::new("retraction monotone");
    for _ in 0..samples {
        let x = random_monoid_word(rng, max_level, max_len);
        let p = Point::finite(x.clone());
        let ok = (0..=depth)
            .all(|n| cmp_x(&Point::finite(x.retract(n)), &p, depth).is_ok_and(|v| v.outcome != Outcome::Greater));
        report.record(ok, || x.to_string());
    }
    report
}

/// If `k1 < k2 < k3` and `Blowup(k3) ⊆ Blowup(k1)` then
/// `Blowup(k2) ⊆ Blowup(k1)`. Triples are drawn from the universe with the
/// hypothesis holding: `k3` from the blowup of `k1`, `k2` between them.
pub fn blowup_nesting(rng: &mut impl Rng, samples: usize, universe: &Universe) -> AuditReport {
    let mut report = AuditReport::new("blowup nesting");
    let depth = universe.max_level();
    let mut attempts = 0;
    while report.checked < samples && attempts < samples * 100 {
        attempts += 1;
        let r1 = rng.gen_range(0..universe.len());
        let k1 = GroupPoint::embed(universe.element(r1));
        let b1 = k1.blowup(depth).expect("finite");
        let above: Vec<u32> = universe
            .cylinder_members(&b1)
            .iter()
            .copied()
            .filter(|&r| r as usize > r1 + 1)
            .collect();
        let Some(&r3) = above.choose(rng) else {
            continue;
        };
        let r2 = rng.gen_range(r1 + 1..r3 as usize);
        let k2 = GroupPoint::embed(universe.element(r2));
        let k3 = GroupPoint::embed(universe.element(r3 as usize));
        let b3 = k3.blowup(depth).expect("finite");
        debug_assert!(b1.contains(&b3));
        let b2 = k2.blowup(depth).expect("finite");
        report.record(b1.contains(&b2), || format!("k1={k1}, k2={k2}, k3={k3}"));
    }
    report
}

/// The least element of a member list is the embedded base.
pub fn cylinder_minimum(universe: &Universe) -> AuditReport {
    let mut report = AuditReport::new("cylinder minimum");
    for n in 1..=universe.max_level() {
        for (r, base) in universe.elements().iter().enumerate() {
            if base.level() > n || universe.projection_rank(r, n) != r {
                continue;
            }
            let c = Cylinder::new(n, base.clone()).expect("level bound");
            let first = universe.cylinder_members(&c).first().map(|&m| m as usize);
            report.record(first == Some(r), || c.to_string());
        }
    }
    report
}

/// Cylinders are nested or disjoint, and containment agrees with the
/// members in the universe.
pub fn nested_or_disjoint(rng: &mut impl Rng, samples: usize, universe: &Universe) -> AuditReport {
    let mut report = AuditReport::new("cylinders nested or disjoint");
    let levels = universe.max_level();
    let pick = |rng: &mut _| {
        let r = Rng::gen_range(rng, 0..universe.len());
        let n = Rng::gen_range(rng, 1..=levels);
        Cylinder::new(n, universe.element(r).project(n)).expect("projection level")
    };
    for _ in 0..samples {
        let (c, d) = (pick(rng), pick(rng));
        let (mc, md) = (universe.cylinder_members(&c), universe.cylinder_members(&d));
        let inter = mc.iter().filter(|r| md.binary_search(r).is_ok()).count();
        let shape = inter == 0 || inter == mc.len() || inter == md.len();
        // truncation can merge distinct cylinders but never split one
        let agrees = (!c.contains(&d) || inter == md.len()) && (!d.contains(&c) || inter == mc.len());
        report.record(shape && agrees, || format!("{c}, {d}"));
    }
    report
}

/// In every context `x_{n-1}`, the reduced context is the least element of
/// `G_n(x_{n-1})` and `x_{n-1}` is the least word of its fiber. Fibers are
/// enumerated by inserting up to two letters of index `n`.
pub fn order_constraints(max_context_len: usize, max_level: u32) -> AuditReport {
    let mut report = AuditReport::new(format!(
        "order constraints (contexts of length <= {max_context_len}, indices <= {max_level})"
    ));
    for n in 1..=max_level + 1 {
        let inserts = [Letter::x(n), Letter::inv(n)];
        for context in MonoidWord::all_up_to(n - 1, max_context_len) {
            let qc = context.reduce();
            let mut ok = true;
            for member in fiber_members(&context, &inserts) {
                if member == context {
                    continue;
                }
                let qm = member.reduce();
                // shortlex already ranks the declared minimum first
                ok &= shortlex_cmp(&qc, &qm) != Ordering::Greater;
                ok &= compare_in_fiber(&context, &context, &member) == Ordering::Less;
            }
            report.record(ok, || format!("context {context} at level {n}"));
        }
    }
    report
}

fn fiber_members(context: &MonoidWord, inserts: &[Letter; 2]) -> Vec<MonoidWord> {
    let base = context.letters();
    let mut out = vec![context.clone()];
    for i in 0..=base.len() {
        for &a in inserts {
            let mut one = base.to_vec();
            one.insert(i, a);
            for j in i + 1..=one.len() {
                for &b in inserts {
                    let mut two = one.clone();
                    two.insert(j, b);
                    out.push(MonoidWord::from_letters(two));
                }
            }
            out.push(MonoidWord::from_letters(one));
        }
    }
    out
}

/// For `x < y < z` in `X_n` with `q_{n-1}R_{n-1}(x) = q_{n-1}R_{n-1}(z)`,
/// also `q_{n-1}R_{n-1}(y)` is that class. Equivalently each class is an
/// interval of the sorted words, which is checked exhaustively.
pub fn non_interlacing(n: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new(format!("non-interlacing at level {n} (length <= {max_len})"));
    let mut words: Vec<(OrderKey, MonoidWord)> = MonoidWord::all_up_to(n, max_len)
        .into_iter()
        .map(|w| (OrderKey::of(&Point::finite(w.clone()), n).expect("finite"), w))
        .collect();
    words.sort();
    let class = |w: &MonoidWord| w.retract(n - 1).reduce();
    let mut last_seen: HashMap<GroupWord, usize> = HashMap::new();
    for (i, (_, y)) in words.iter().enumerate() {
        let cy = class(y);
        if let Some(&j) = last_seen.get(&cy) {
            // every word strictly between two members of a class must share it
            let gap = words[j + 1..i].iter().find(|(_, w)| class(w) != cy);
            report.record(gap.is_none(), || {
                let (_, mid) = gap.expect("gap");
                format!("x={}, y={mid}, z={y}", words[j].1)
            });
        }
        last_seen.insert(cy, i);
    }
    report
}

/// Trichotomy, antisymmetry and transitivity of `cmp_X` on sampled pairs
/// and triples of words.
pub fn order_is_linear(rng: &mut impl Rng, samples: usize, max_level: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new("order is linear");
    let depth = max_level;
    let cmp = |a: &MonoidWord, b: &MonoidWord| {
        let v = cmp_x(&Point::finite(a.clone()), &Point::finite(b.clone()), depth).expect("finite");
        match v.outcome {
            Outcome::Less => Ordering::Less,
            Outcome::Greater => Ordering::Greater,
            Outcome::EqualUpToDepth => Ordering::Equal,
        }
    };
    for _ in 0..samples {
        let (a, b, c) = (
            random_monoid_word(rng, max_level, max_len),
            random_monoid_word(rng, max_level, max_len),
            random_monoid_word(rng, max_level, max_len),
        );
        let (ab, ba, bc, ac) = (cmp(&a, &b), cmp(&b, &a), cmp(&b, &c), cmp(&a, &c));
        let mut ok = ab == ba.reverse() && (ab == Ordering::Equal) == (a == b);
        if ab == bc && ab != Ordering::Equal {
            ok &= ac == ab;
        }
        report.record(ok, || format!("{a}, {b}, {c}"));
    }
    report
}

/// `σ(g)` is coherent, in the class of `g`, and distinct classes get
/// distinct minimal representatives.
pub fn sigma_properties(rng: &mut impl Rng, samples: usize, max_level: u32, max_len: usize, depth: u32) -> AuditReport {
    let mut report = AuditReport::new("sigma representatives");
    for _ in 0..samples {
        let g = random_point(rng, max_level, max_len, depth);
        let h = random_point(rng, max_level, max_len, depth);
        let ok = match (g.sigma(depth), h.sigma(depth)) {
            (Ok(sg), Ok(sh)) => {
                let coherent = (0..depth).all(|n| sg.word_at(n + 1).map(|w| w.retract(n)).ok() == sg.word_at(n).ok());
                let same_class = GroupPoint::new(sg.clone()).equal_up_to(&g, depth).unwrap_or(false);
                let distinct = g.equal_up_to(&h, depth).unwrap_or(true)
                    || (1..=depth).any(|n| sg.word_at(n).ok() != sh.word_at(n).ok());
                coherent && same_class && distinct
            }
            _ => false,
        };
        report.record(ok, || format!("{g}, {h}"));
    }
    report
}

/// `loop_eq` agrees with level-by-level reduced equality, and `F` turns
/// concatenation into the product at every level.
pub fn loop_soundness(rng: &mut impl Rng, samples: usize, max_level: u32, max_len: usize) -> AuditReport {
    let mut report = AuditReport::new("loop equivalence soundness");
    for _ in 0..samples {
        let u = LoopItinerary::new(random_monoid_word(rng, max_level, max_len));
        // half the pairs are equivalent by construction
        let v = if rng.gen_bool(0.5) {
            let pad = random_monoid_word(rng, max_level, 3);
            let mut letters = u.word().letters().to_vec();
            let at = rng.gen_range(0..=letters.len());
            let insert: Vec<Letter> = pad
                .letters()
                .iter()
                .copied()
                .chain(pad.inverse().letters().iter().copied())
                .collect();
            letters.splice(at..at, insert);
            LoopItinerary::new(MonoidWord::from_letters(letters))
        } else {
            LoopItinerary::new(random_monoid_word(rng, max_level, max_len))
        };
        let levelwise = (1..=max_level).all(|n| u.word().retract(n).reduce() == v.word().retract(n).reduce());
        let (fu, fv, fuv) = (f_map(&u), f_map(&v), f_map(&u.concat(&v)));
        let product = (1..=max_level).all(|n| {
            let (a, b, ab) = (fu.project(n), fv.project(n), fuv.project(n));
            matches!((a, b, ab), (Ok(a), Ok(b), Ok(ab)) if a.mul(&b) == ab)
        });
        report.record(loop_eq(&u, &v) == levelwise && product, || format!("{u}, {v}"));
    }
    report
}

/// Tallies for one randomized separation suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteTally {
    pub instances: usize,
    pub errors: Vec<String>,
    pub violations: Vec<(&'static str, usize)>,
    pub first_failure: Option<String>,
}

impl SuiteTally {
    fn violation(&mut self, what: &'static str, instance: impl FnOnce() -> String) {
        match self.violations.iter_mut().find(|(w, _)| *w == what) {
            Some((_, n)) => *n += 1,
            None => self.violations.push((what, 1)),
        }
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("{what}: {}", instance()));
        }
    }

    fn error(&mut self, err: String, instance: impl FnOnce() -> String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(format!("{err}: {}", instance()));
        }
        self.errors.push(err);
    }

    pub fn failed_instances(&self) -> usize {
        self.errors.len() + self.violations.iter().map(|(_, n)| n).sum::<usize>()
    }

    pub fn passed(&self) -> bool {
        self.instances > 0 && self.failed_instances() == 0
    }
}

impl fmt::Display for SuiteTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} instances, {} errors", self.instances, self.errors.len())?;
        for (what, n) in &self.violations {
            write!(f, ", {n} x {what}")?;
        }
        if let Some(e) = &self.first_failure {
            write!(f, "; first: {e}")?;
        }
        Ok(())
    }
}

fn show(set: &[GroupPoint]) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Random `(a, B)` with `a < B`, `1 <= |B| <= max_b`.
pub fn thicken_suite(rng: &mut impl Rng, samples: usize, max_b: usize, universe: &Universe, depth: u32) -> SuiteTally {
    let mut tally = SuiteTally::default();
    let n = universe.len();
    while tally.instances < samples {
        let ra = rng.gen_range(0..n.saturating_sub(max_b).max(1));
        let size = rng.gen_range(1..=max_b);
        let mut ranks: Vec<usize> = (ra + 1..n)
            .collect::<Vec<_>>()
            .choose_multiple(rng, size)
            .copied()
            .collect();
        if ranks.is_empty() {
            continue;
        }
        ranks.sort_unstable();
        tally.instances += 1;
        let a = GroupPoint::embed(universe.element(ra));
        let b: Vec<GroupPoint> = ranks.iter().map(|&r| GroupPoint::embed(universe.element(r))).collect();
        let instance = || format!("a={a}, B={}", show(&b));
        let trace = match thicken(&a, &b, universe, depth) {
            Ok(t) => t,
            Err(e) => {
                tally.error(e.to_string(), instance);
                continue;
            }
        };
        let v = &trace.outcome;
        let mut tracked = vec![a.clone()];
        tracked.extend(b.iter().cloned());
        let sweep = Sweep::new(universe, tracked, depth);
        let mut check = |ok: bool, what: &'static str| {
            if !ok {
                tally.violation(what, instance);
            }
        };
        check(!v.contains(&a).unwrap_or(true), "a in V");
        check(b.iter().all(|x| v.contains(x).unwrap_or(false)), "B not covered");
        check(sweep.set_above(&a, v).unwrap_or(false), "a not below V");
        check(
            matches!(find_monotonicity_break(&trace, &sweep), Ok(None)),
            "pieces not increasing",
        );
        check(
            matches!(find_non_minimal_eta(&trace, Some(&a), &sweep), Ok(None)),
            "eta not minimal",
        );
        check(trace.steps.len() <= b.len(), "too many steps");
        check(
            matches!(relatively_clopen(v, universe, depth), Ok(Clopenness::Ok)),
            "boundary witness",
        );
    }
    tally
}

/// Random disjoint `(A, B)` with sizes in `1..=max_size`.
pub fn separate_suite(
    rng: &mut impl Rng,
    samples: usize,
    max_size: usize,
    universe: &Universe,
    depth: u32,
) -> SuiteTally {
    let mut tally = SuiteTally::default();
    let n = universe.len();
    while tally.instances < samples {
        let (sa, sb) = (rng.gen_range(1..=max_size), rng.gen_range(1..=max_size));
        let ranks: Vec<usize> = rand::seq::index::sample(rng, n, sa + sb).into_vec();
        tally.instances += 1;
        let a: Vec<GroupPoint> = ranks[..sa]
            .iter()
            .map(|&r| GroupPoint::embed(universe.element(r)))
            .collect();
        let b: Vec<GroupPoint> = ranks[sa..]
            .iter()
            .map(|&r| GroupPoint::embed(universe.element(r)))
            .collect();
        let instance = || format!("A={}, B={}", show(&a), show(&b));
        let sep = match separate(&a, &b, universe, depth) {
            Ok(s) => s,
            Err(e) => {
                tally.error(e.to_string(), instance);
                continue;
            }
        };
        let mut tracked = a.clone();
        tracked.extend(b.iter().cloned());
        let sweep = Sweep::new(universe, tracked, depth);
        let mut check = |ok: bool, what: &'static str| {
            if !ok {
                tally.violation(what, instance);
            }
        };
        check(a.iter().all(|x| sep.u_a.contains(x).unwrap_or(false)), "A not covered");
        check(!b.iter().any(|x| sep.u_a.contains(x).unwrap_or(true)), "U_A meets B");
        let one_sided = sep.trace.steps.iter().all(|s| {
            let meets = |set: &[GroupPoint]| set.iter().any(|x| s.gamma.contains(x).unwrap_or(true));
            !(meets(&a) && meets(&b))
        });
        check(one_sided, "piece meets both sides");
        check(!sweep.meets(&sep.u_a, &sep.b_side).unwrap_or(true), "sides overlap");
        check(
            matches!(relatively_clopen(&sep.u_a, universe, depth), Ok(Clopenness::Ok)),
            "boundary witness",
        );
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::UniverseSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_suites_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(confluence_exhaustive(2, 5).passed());
        assert!(reduction_retraction_exhaustive(2, 4).passed());
        assert!(projection_coherence(&mut rng, 50, 3, 6, 5).passed());
        assert!(projection_chain(&mut rng, 50, 3, 6, 5).passed());
        assert!(retraction_monotone(&mut rng, 50, 3, 6, 5).passed());
        assert!(order_constraints(3, 2).passed());
        assert!(order_is_linear(&mut rng, 200, 3, 5).passed());
        assert!(sigma_properties(&mut rng, 50, 3, 5, 5).passed());
        assert!(loop_soundness(&mut rng, 100, 3, 6).passed());
        let u = Universe::new(UniverseSpec {
            max_level: 2,
            max_len: 4,
        });
        assert!(cylinder_minimum(&u).passed());
        assert!(nested_or_disjoint(&mut rng, 200, &u).passed());
    }

    #[test]
    fn interlacing_depends_on_the_level() {
        assert!(non_interlacing(2, 4).passed());
        let r = non_interlacing(3, 3);
        assert!(!r.passed());
    }

    #[test]
    fn fiber_enumeration_counts() {
        let c: MonoidWord = "x1 X1".parse().unwrap();
        // one insertion: 3 slots x 2 letters; two: 6 slot pairs x 4
        assert_eq!(fiber_members(&c, &[Letter::x(2), Letter::inv(2)]).len(), 1 + 6 + 24);
    }
}
