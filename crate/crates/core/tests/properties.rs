mod common;

use std::collections::BTreeSet;

use common::*;
use dcollapse::collapse::scripts::normalize_certificate;
use dcollapse::collapse::{is_normal_form, replay_certificate};
use dcollapse::format::{parse_certificate, parse_cplx, write_certificate, write_cplx, Registry};
use dcollapse::{
    check_certificate, collapsible_faces, decide, elementary_collapse, greedy_decide, Answer,
    Complex, Face, OrderPolicy,
};
use proptest::prelude::*;

fn complex_strategy(max_vertices: u32, max_gens: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(
        prop::collection::btree_set(0..max_vertices, 1..=max_vertices as usize),
        1..=max_gens,
    )
    .prop_map(|gens| {
        Complex::from_generators(
            gens.into_iter()
                .map(|s| Face::from_ids(&s.into_iter().collect::<Vec<_>>())),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complexes_are_closed(k in complex_strategy(7, 5)) {
        prop_assert!(k.check_invariants());
        for f in k.faces() {
            for s in f.subfaces() {
                prop_assert!(k.contains(&s));
            }
        }
        let max: BTreeSet<Face> = k.maximal().iter().cloned().collect();
        prop_assert_eq!(max.len(), k.maximal().len());
        prop_assert_eq!(closure(k.maximal()), k.face_set().clone());
    }

    #[test]
    fn collapsible_faces_match_enumeration(k in complex_strategy(6, 5), d in 1usize..4) {
        prop_assert_eq!(collapsible_faces(&k, d), naive_collapsible(k.face_set(), d));
    }

    #[test]
    fn elementary_collapse_removes_the_interval(k in complex_strategy(6, 4), d in 1usize..4, pick in any::<prop::sample::Index>()) {
        let free = collapsible_faces(&k, d);
        prop_assume!(!free.is_empty());
        let sigma = &free[pick.index(free.len())];
        let tau = k.unique_max_coface(sigma).unwrap().unwrap();
        let rest = elementary_collapse(&k, sigma, d).unwrap();
        prop_assert!(rest.check_invariants());
        for f in k.faces() {
            let in_interval = sigma.is_subset_of(f) && f.is_subset_of(&tau);
            prop_assert_eq!(rest.contains(f), !in_interval);
        }
    }

    #[test]
    fn search_agrees_with_brute_force(k in complex_strategy(6, 4), d in 1usize..4) {
        prop_assume!(k.len() <= 40);
        let v = decide(&k, d, 10_000_000);
        prop_assert_ne!(v.answer, Answer::Unknown);
        prop_assert_eq!(v.collapsible(), brute_force_collapsible(&k, d));
        if let Some(c) = &v.certificate {
            prop_assert!(check_certificate(&k, c).is_ok());
        }
    }

    #[test]
    fn greedy_yes_is_certified(k in complex_strategy(7, 5), d in 1usize..5, seed in any::<u64>()) {
        let v = greedy_decide(&k, d, &OrderPolicy::SeededRandom(seed));
        if let Some(c) = &v.certificate {
            prop_assert!(check_certificate(&k, c).is_ok());
        } else {
            let w = v.stuck_witness.expect("stuck residue");
            prop_assert!(collapsible_faces(&w, d).is_empty());
            prop_assert!(!w.is_empty());
        }
    }

    #[test]
    fn normalization_keeps_validity(k in complex_strategy(7, 4), d in 2usize..4, seed in any::<u64>()) {
        let v = greedy_decide(&k, d, &OrderPolicy::SeededRandom(seed));
        prop_assume!(v.certificate.is_some());
        let n = normalize_certificate(&k, v.certificate.as_ref().unwrap()).unwrap();
        prop_assert!(check_certificate(&k, &n.certificate).is_ok());
        prop_assert!(is_normal_form(&k, &n.certificate).unwrap());
    }

    #[test]
    fn text_formats_round_trip(k in complex_strategy(7, 5), d in 1usize..4) {
        let text = write_cplx(&k, &Registry::new(), &[]);
        let (back, _) = parse_cplx(&text).unwrap();
        prop_assert!(back.same_named_faces(&k));
        let v = greedy_decide(&k, d, &OrderPolicy::Lexicographic);
        if let Some(c) = v.certificate {
            let ctext = write_certificate(&c, &k);
            let parsed = parse_certificate(&ctext, &back).unwrap();
            prop_assert!(check_certificate(&back, &parsed).is_ok());
            let names = |k: &Complex, c: &dcollapse::Certificate| c
                .faces()
                .map(|f| f.vertices().iter().map(|&v| k.token(v)).collect::<BTreeSet<_>>())
                .collect::<Vec<_>>();
            prop_assert_eq!(names(&back, &parsed), names(&k, &c));
        }
    }

    #[test]
    fn replaying_a_prefix_stays_a_complex(k in complex_strategy(7, 5), d in 1usize..4, cut in any::<prop::sample::Index>()) {
        let v = greedy_decide(&k, d, &OrderPolicy::Lexicographic);
        prop_assume!(v.certificate.is_some());
        let c = v.certificate.unwrap();
        let mut prefix = c.clone();
        prefix.steps.truncate(cut.index(c.len() + 1));
        let r = replay_certificate(&k, &prefix).unwrap();
        prop_assert!(r.check_invariants());
        prop_assert!(r.len() <= k.len());
    }
}

#[test]
fn sphere_boundaries_are_not_collapsible() {
    for n in 3..=5 {
        let k = simplex_boundary(n);
        for d in 1..n as usize - 1 {
            assert_eq!(decide(&k, d, 1_000_000).answer, Answer::No, "n={n} d={d}");
        }
    }
}

#[test]
fn tiny_budget_reports_unknown() {
    let k = Complex::from_generators([face(&[0, 1, 2, 3, 4, 5])]);
    assert_eq!(decide(&k, 2, 1).answer, Answer::Unknown);
    assert_eq!(decide(&k, 2, 1_000_000).answer, Answer::Yes);
}
