mod common;

use std::collections::BTreeSet;

use collapsi::deals::random_deal;
use collapsi::engine::{canonicalize, Coord, Deal, Dihedral, GameState, Symmetry, JOKER_REPRESENTATIVES};
use collapsi::solver::solve_score;
use common::random_state;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn symmetry() -> impl Strategy<Value = Symmetry> {
    (0u8..4, 0u8..4, 0usize..8).prop_map(|(r, c, d)| Symmetry::new(r, c, Dihedral::ALL[d]))
}

fn deal() -> impl Strategy<Value = Deal> {
    any::<u64>().prop_map(|seed| random_deal(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn canonical_form_is_constant_on_orbits(d in deal(), t in symmetry()) {
        let (canon, via) = canonicalize(&d);
        prop_assert_eq!(d.transformed(via), canon);
        prop_assert_eq!(canonicalize(&d.transformed(t)).0, canon);
        let [first, second] = canon.jokers();
        prop_assert_eq!(first, Coord::new(0, 0));
        prop_assert!(JOKER_REPRESENTATIVES.contains(&second));
    }

    #[test]
    fn canonicalize_is_idempotent(d in deal()) {
        let (canon, _) = canonicalize(&d);
        let (again, stabilizer) = canonicalize(&canon);
        prop_assert_eq!(again, canon);
        prop_assert_eq!(canon.transformed(stabilizer), canon);
    }

    #[test]
    fn transform_is_a_group_action(d in deal(), a in symmetry(), b in symmetry()) {
        prop_assert_eq!(d.transformed(a.compose(b)), d.transformed(b).transformed(a));
        prop_assert_eq!(d.transformed(a).transformed(a.inverse()), d);
        let mut sorted = *d.transformed(a).cells();
        sorted.sort();
        prop_assert_eq!(sorted, Deal::MULTISET);
    }

    #[test]
    fn moves_commute_with_symmetries(seed in any::<u64>(), plies in 0usize..12, t in symmetry()) {
        let s = random_state(&mut ChaCha8Rng::seed_from_u64(seed), plies);
        let image = s.transformed(t);
        let mapped: BTreeSet<Coord> = s.legal_moves().iter().map(|m| t.apply(m.dest)).collect();
        let direct: BTreeSet<Coord> = image.legal_moves().iter().map(|m| m.dest).collect();
        prop_assert_eq!(mapped, direct);
        // Transformed positions remain valid positions.
        prop_assert_eq!(image.to_string().parse::<GameState>().unwrap(), image);
    }
}

#[test]
fn golden_deal_already_has_canonical_jokers() {
    let d: Deal = "JA2A/3JA4/2323/34A2".parse().unwrap();
    assert_eq!(d.jokers(), [Coord::new(0, 0), Coord::new(1, 1)]);
    let (canon, _) = canonicalize(&d);
    assert_eq!(canon.jokers()[1], Coord::new(1, 1));
}

#[test]
fn solve_is_invariant_under_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..40 {
        let s = random_state(&mut rng, i % 9);
        let v = solve_score(&s).score;
        for t in Symmetry::all().step_by(13) {
            assert_eq!(solve_score(&s.transformed(t)).score, v);
        }
    }
}
