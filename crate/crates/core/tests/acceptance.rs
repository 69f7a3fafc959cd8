//! Acceptance criteria. Runs without the libtest harness and prints one
//! line per criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use earring_core::audit::{self, AuditReport, SuiteTally};
use earring_core::convergence::{
    converge, parse_rule, relatively_clopen, Certificate, Clopenness, Outcome, Sequence, Witness,
};
use earring_core::loops::{naive_thickening, w};
use earring_core::point::GroupPoint;
use earring_core::separation::thicken;
use earring_core::universe::{Universe, UniverseSpec};
use earring_core::word::{parse_word, MonoidWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2026;
const DEPTH: u32 = 6;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn from_reports(reports: &[AuditReport], min_checked: usize) -> Verdict {
    let pass = reports.iter().all(|r| r.passed() && r.checked >= min_checked);
    let detail = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ");
    Verdict { pass, detail }
}

fn from_tally(t: &SuiteTally, expected: usize) -> Verdict {
    Verdict {
        pass: t.passed() && t.instances == expected,
        detail: t.to_string(),
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn confluence() -> Verdict {
    // 1 + 4 + 4^2 + ... + 4^8 words
    let r = audit::confluence_exhaustive(2, 8);
    let mut v = from_reports(std::slice::from_ref(&r), 87_381);
    v.pass &= r.checked == 87_381;
    v
}

fn axioms(universe: &Universe) -> Verdict {
    let mut g = rng(2);
    from_reports(
        &[
            audit::projection_coherence(&mut g, 1000, 3, 6, DEPTH),
            audit::projection_chain(&mut g, 1000, 3, 6, DEPTH),
            audit::blowup_nesting(&mut g, 1000, universe),
        ],
        1000,
    )
}

fn order_constraints() -> Verdict {
    from_reports(&[audit::order_constraints(5, 3)], 1)
}

fn convergence_fixtures() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    let rule = |s: &str| Sequence::from_rule(parse_rule(s).expect("fixture rule"));

    let v = converge(&rule("x1 x%n X1 from 2"), DEPTH).expect("finite terms");
    let ok = v.outcome == Outcome::Converges(GroupPoint::identity());
    pass &= ok;
    notes.push(format!("(x1 x_n X1) {v}"));

    let v = converge(&rule("(x1 x%n X1 x%n)^%n from 2"), DEPTH).expect("finite terms");
    let ok = v.outcome == Outcome::Diverges
        && matches!(&v.certificate, Some(Certificate::UnboundedCount { samples, .. })
            if samples.windows(2).all(|p| p[0].1 < p[1].1));
    pass &= ok;
    notes.push(format!("((x1 x_n X1 x_n)^n) {v}"));

    let x1_x1inv = parse_word("x1 X1").expect("word");
    let mut constant = true;
    for n in 2..=10 {
        let g = GroupPoint::finite(parse_word(&format!("x1 x{n} X1")).expect("word"));
        let s = g.sigma(n).expect("finite");
        constant &= s.word_at(1).expect("level 1") == x1_x1inv;
    }
    let limit_level1 = GroupPoint::identity()
        .sigma(DEPTH)
        .expect("finite")
        .word_at(1)
        .expect("level 1");
    let discontinuous = constant && limit_level1 == MonoidWord::empty();
    pass &= discontinuous;
    notes.push(format!(
        "sigma level-1 words constant at x1 X1: {constant}, sigma(e) level-1 word: {limit_level1}"
    ));
    Verdict {
        pass,
        detail: notes.join("; "),
    }
}

fn thickening_fixture(universe: &Universe) -> Verdict {
    let b: Vec<GroupPoint> = (1..=5).map(|k| GroupPoint::finite(w(k))).collect();
    let reduced: Vec<_> = (1..=5).map(|k| w(k).reduce()).collect();
    let naive = naive_thickening(&reduced);
    let expected_witness = Witness::new("x%n x%n+1", 1..=5).name;
    let naive_verdict = relatively_clopen(&naive, universe, DEPTH).expect("decidable");
    let rejected = matches!(&naive_verdict, Clopenness::BoundaryWitness { witness, limit, .. }
        if *witness == expected_witness && limit.as_finite().is_some_and(|l| l.is_identity()));

    let e = GroupPoint::identity();
    let (correct, detail) = match thicken(&e, &b, universe, 8) {
        Ok(trace) => {
            let v = &trace.outcome;
            let clopen = relatively_clopen(v, universe, 8).expect("decidable");
            let covers = b.iter().all(|x| v.contains(x).unwrap_or(false));
            let excludes = !v.contains(&e).unwrap_or(true);
            (
                clopen == Clopenness::Ok && covers && excludes,
                format!("V = {v}: {clopen}, contains B: {covers}, excludes e: {excludes}"),
            )
        }
        Err(err) => (false, format!("thicken failed: {err}")),
    };
    Verdict {
        pass: rejected && correct,
        detail: format!("naive {naive}: {naive_verdict}; {detail}"),
    }
}

fn main() -> ExitCode {
    let universe = Universe::new(UniverseSpec::default());
    let criteria: Vec<Criterion<'_>> = vec![
        ("reduction confluence", Box::new(confluence)),
        ("axiom audit", Box::new(|| axioms(&universe))),
        ("order constraint audit", Box::new(order_constraints)),
        ("convergence fixtures", Box::new(convergence_fixtures)),
        (
            "naive vs correct thickening",
            Box::new(|| thickening_fixture(&universe)),
        ),
        (
            "randomized thicken",
            Box::new(|| from_tally(&audit::thicken_suite(&mut rng(6), 500, 8, &universe, DEPTH), 500)),
        ),
        (
            "randomized separate",
            Box::new(|| from_tally(&audit::separate_suite(&mut rng(7), 200, 5, &universe, DEPTH), 200)),
        ),
        (
            "loop-equivalence soundness",
            Box::new(|| from_reports(&[audit::loop_soundness(&mut rng(8), 1000, 4, 8)], 1000)),
        ),
    ];
    println!(
        "acceptance: universe {}, {} elements, seed {SEED}",
        universe.spec(),
        universe.len()
    );
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!v.pass);
        println!(
            "criterion {} {status} {name} ({:.1}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
