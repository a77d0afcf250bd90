use proptest::prelude::*;
use topogame_core::families::{enumerate_opens, maximal_disjoint_refinement};
use topogame_core::game::{solve, GameKind};
use topogame_core::invariants::{self, InvariantReport};
use topogame_core::spacegen::{iso_class, random_space, space_id};
use topogame_core::{oracle, space_from_json, space_to_json, FiniteSpace, OpenFamily, PointSet};

fn arb_space(max_n: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max_n, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(n, p, seed)| random_space(n, p, seed).unwrap())
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_algebra(s in arb_space(10), a in any::<u32>(), b in any::<u32>()) {
        let n = s.n();
        let mask = PointSet::full(n).bits();
        let (a, b) = (PointSet::from_bits(a & mask), PointSet::from_bits(b & mask));
        let ca = s.closure(a);
        prop_assert_eq!(s.closure(ca), ca);
        prop_assert_eq!(s.closure(a | b), ca | s.closure(b));
        prop_assert_eq!(s.interior(a), s.closure(a.complement(n)).complement(n));
        prop_assert!(s.is_open(s.interior(a)));
        prop_assert!(s.is_closed(ca));
    }

    #[test]
    fn minimal_neighbourhoods_are_least_opens(s in arb_space(8)) {
        let opens = enumerate_opens(&s);
        for x in 0..s.n() {
            let u = s.minimal_nbhd(x).unwrap();
            prop_assert!(s.is_open(u) && u.contains(x));
            prop_assert!(opens.iter().filter(|o| o.contains(x)).all(|o| u.is_subset(*o)));
        }
    }

    #[test]
    fn invariant_inequalities(s in arb_space(7)) {
        let r = InvariantReport::compute(&s);
        prop_assert!(r.wl_degree >= 1);
        prop_assert!(r.wl_degree <= r.cellularity);
        prop_assert!(r.wl_degree <= r.density);
        prop_assert_eq!(r.cellularity, r.pi_weight);
        prop_assert!(r.pi_character.iter().all(|&c| c == 1 && c <= r.pi_weight));
    }

    #[test]
    fn invariants_match_brute_force(s in arb_space(4)) {
        prop_assert_eq!(invariants::pi_weight(&s), oracle::pi_weight(&s));
        prop_assert_eq!(invariants::wl_degree(&s), oracle::wl_degree(&s));
        prop_assert_eq!(invariants::cellularity(&s), oracle::cellularity(&s));
    }

    #[test]
    fn relabeling_preserves_invariants_and_class(
        (s, perm) in arb_space(6).prop_flat_map(|s| { let n = s.n(); (Just(s), arb_perm(n)) })
    ) {
        let n = s.n();
        let t = s.relabel(&perm).unwrap();
        prop_assert_eq!(iso_class(&s), iso_class(&t));
        prop_assert_eq!(InvariantReport::compute(&s).wl_degree, InvariantReport::compute(&t).wl_degree);
        prop_assert_eq!(invariants::cellularity(&s), invariants::cellularity(&t));
        if n <= 3 {
            for kind in GameKind::ALL_UNCAPPED {
                prop_assert_eq!(solve(&s, kind, 2).unwrap().winner, solve(&t, kind, 2).unwrap().winner);
            }
        }
    }

    #[test]
    fn json_round_trip(s in arb_space(12)) {
        let text = space_to_json(&s);
        let back = space_from_json(&text).unwrap();
        prop_assert_eq!(space_id(&back), space_id(&s));
        prop_assert_eq!(back, s);
    }

    #[test]
    fn refinement_is_maximal_cellular(s in arb_space(6), picks in proptest::collection::vec(any::<u32>(), 1..6)) {
        let opens: Vec<PointSet> = enumerate_opens(&s).into_iter().skip(1).collect();
        let mut members: Vec<PointSet> = picks.iter().map(|p| opens[*p as usize % opens.len()]).collect();
        members.push(*opens.last().unwrap());
        let family = OpenFamily::new(members);
        let r = maximal_disjoint_refinement(&s, &family).unwrap();
        prop_assert!(r.family().is_cellular());
        prop_assert!(s.is_dense(r.family().union()));
        for &(m, w) in r.witnesses() {
            prop_assert!(family.contains(w) && m.is_subset(w));
        }
    }

    #[test]
    fn delta_space_is_identity(s in arb_space(6)) {
        prop_assert_eq!(s.delta_space(), s);
    }

    #[test]
    fn tie_break_order_is_total_and_size_first(a in any::<u16>(), b in any::<u16>()) {
        let (x, y) = (PointSet::from_bits(a.into()), PointSet::from_bits(b.into()));
        prop_assert_eq!(x.cmp(&y) == std::cmp::Ordering::Equal, x == y);
        if x.len() < y.len() {
            prop_assert!(x < y);
        }
    }
}

#[test]
fn random_space_is_deterministic() {
    let a = random_space(5, 0.3, 42).unwrap();
    let b = random_space(5, 0.3, 42).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        random_space(5, 0.0, 7).unwrap(),
        topogame_core::spacegen::discrete(5)
    );
    assert_eq!(
        random_space(5, 1.0, 7).unwrap(),
        topogame_core::spacegen::indiscrete(5)
    );
    assert!(random_space(5, 1.5, 7).is_err());
}
