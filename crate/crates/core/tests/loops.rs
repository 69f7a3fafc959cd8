use earring_core::loops::{f_map, loop_eq, sigma_set, w, LoopItinerary};
use earring_core::word::{Letter, MonoidWord};
use proptest::prelude::*;

fn itinerary(max_level: u32, max_len: usize) -> impl Strategy<Value = LoopItinerary> {
    prop::collection::vec((1..=max_level, any::<bool>()), 0..=max_len).prop_map(|v| {
        LoopItinerary::new(MonoidWord::from_letters(
            v.into_iter().map(|(i, inv)| Letter::new(i, inv).unwrap()).collect(),
        ))
    })
}

proptest! {
    #[test]
    fn f_turns_concatenation_into_products(u in itinerary(4, 10), v in itinerary(4, 10)) {
        let (fu, fv, fuv) = (f_map(&u), f_map(&v), f_map(&u.concat(&v)));
        for n in 0..=5 {
            prop_assert_eq!(fuv.project(n).unwrap(), fu.project(n).unwrap().mul(&fv.project(n).unwrap()));
        }
    }

    #[test]
    fn loop_eq_is_an_equivalence(u in itinerary(3, 6), v in itinerary(3, 6), t in itinerary(3, 6)) {
        prop_assert!(loop_eq(&u, &u));
        prop_assert_eq!(loop_eq(&u, &v), loop_eq(&v, &u));
        if loop_eq(&u, &v) && loop_eq(&v, &t) {
            prop_assert!(loop_eq(&u, &t));
        }
    }

    #[test]
    fn loop_eq_refines_every_level(u in itinerary(3, 8), pad in itinerary(3, 4), other in itinerary(3, 8)) {
        // appending pad · pad⁻¹ never changes the class
        let padded = u.concat(&pad).concat(&LoopItinerary::new(pad.word().inverse()));
        prop_assert!(loop_eq(&padded, &u));
        for v in [&padded, &other] {
            let levelwise = (0..=4).all(|n| u.word().retract(n).reduce() == v.word().retract(n).reduce());
            prop_assert_eq!(loop_eq(&u, v), levelwise);
        }
    }

    #[test]
    fn sigma_set_endpoints_are_single(u in itinerary(3, 8), n in 1u32..=3) {
        let s = sigma_set(&u, n, 1 << 16).unwrap();
        prop_assert_eq!(s.endpoints.len(), 1);
        prop_assert!(s.words.contains(&u.word().retract(n)));
    }
}

#[test]
fn w_fixture_projections() {
    let f = f_map(&LoopItinerary::new(w(3)));
    assert_eq!(f.project(1).unwrap().to_string(), "e");
    assert_eq!(f.project(2).unwrap().to_string(), "e");
    assert_eq!(f.project(3).unwrap().to_string(), "x3");
    assert_eq!(
        f.project(4).unwrap().to_string(),
        "x1 x4 X1 x4 x1 x4 X1 x4 x1 x4 X1 x4 x3"
    );
}
