use std::cmp::Ordering;

use earring_core::loops::{sigma_set, LoopItinerary};
use earring_core::word::{shortlex_cmp, GroupWord, Letter, MonoidWord};
use proptest::prelude::*;

fn word(max_level: u32, max_len: usize) -> impl Strategy<Value = MonoidWord> {
    prop::collection::vec((1..=max_level, any::<bool>()), 0..=max_len)
        .prop_map(|v| MonoidWord::from_letters(v.into_iter().map(|(i, inv)| Letter::new(i, inv).unwrap()).collect()))
}

proptest! {
    #[test]
    fn deletion_chains_end_at_the_reduction(w in word(3, 10)) {
        let s = sigma_set(&LoopItinerary::new(w.clone()), 3, 1 << 18).unwrap();
        let expected: MonoidWord = w.reduce().into();
        prop_assert_eq!(s.endpoints.into_iter().collect::<Vec<_>>(), vec![expected]);
    }

    #[test]
    fn reduction_commutes_with_retraction(w in word(4, 12), n in 0u32..5) {
        prop_assert_eq!(w.reduce().as_word().retract(n).reduce(), w.retract(n).reduce());
    }

    #[test]
    fn exponent_sums_survive_reduction(w in word(4, 12)) {
        let r = w.reduce();
        for i in 1..=4 {
            prop_assert_eq!(w.exponent_sum(i), r.as_word().exponent_sum(i));
        }
    }

    #[test]
    fn shortlex_is_a_total_order(a in word(3, 6), b in word(3, 6), c in word(3, 6)) {
        let (a, b, c) = (a.reduce(), b.reduce(), c.reduce());
        prop_assert_eq!(shortlex_cmp(&a, &b), shortlex_cmp(&b, &a).reverse());
        prop_assert_eq!(shortlex_cmp(&a, &b) == Ordering::Equal, a == b);
        if shortlex_cmp(&a, &b) != Ordering::Greater && shortlex_cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(shortlex_cmp(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn finite_sets_have_one_shortlex_minimum(set in prop::collection::vec(word(3, 5), 1..12)) {
        let set: Vec<GroupWord> = set.iter().map(MonoidWord::reduce).collect();
        let min = set.iter().min_by(|a, b| shortlex_cmp(a, b)).unwrap();
        let minima = set.iter().filter(|g| set.iter().all(|h| shortlex_cmp(g, h) != Ordering::Greater)).collect::<Vec<_>>();
        prop_assert!(minima.iter().all(|g| *g == min));
    }
}

#[test]
fn enumerations_are_strictly_increasing() {
    let words = GroupWord::all_up_to(2, 4);
    assert!(words.windows(2).all(|p| shortlex_cmp(&p[0], &p[1]) == Ordering::Less));
    // 1 + 4 + 12 + 36 + 108 reduced words over two generators
    assert_eq!(words.len(), 161);
}
