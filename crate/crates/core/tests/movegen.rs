mod common;

use std::collections::BTreeSet;

use collapsi::engine::{Coord, GameState, Player};
use common::{naive_destinations, random_state};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn legal_moves_match_naive_walker() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 2000 {
        let plies = rng.random_range(0..14);
        let s = random_state(&mut rng, plies);
        let fast: BTreeSet<Coord> = s.legal_moves().iter().map(|m| m.dest).collect();
        assert_eq!(fast, naive_destinations(&s), "state {s}");
        checked += 1;
    }
}

#[test]
fn golden_opening_has_fourteen_destinations() {
    let s: GameState = "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r".parse().unwrap();
    let dests = naive_destinations(&s);
    assert_eq!(dests.len(), 14);
    assert_eq!(s.legal_moves().len(), 14);
    assert!(!s.is_terminal());
}

#[test]
fn witness_paths_are_valid_and_parity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let plies = rng.random_range(0..12);
        let s = random_state(&mut rng, plies);
        let origin = s.pawn(s.to_move());
        for m in s.legal_moves() {
            assert_eq!(m.path.last(), Some(&m.dest));
            let mut seen = vec![origin];
            let mut prev = origin;
            for &c in &m.path {
                assert!(prev.is_adjacent(c));
                assert!(s.is_face_up(c));
                assert!(!seen.contains(&c));
                seen.push(c);
                prev = c;
            }
            let len = m.len() as u32;
            let start = origin.row as u32 + origin.col as u32;
            let end = m.dest.row as u32 + m.dest.col as u32;
            assert_eq!((start + len) % 2, end % 2);
            assert!(!m.is_empty() && m.len() <= 4);
        }
    }
}

#[test]
fn apply_move_changes_exactly_one_cell_one_pawn_and_the_turn() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let plies = rng.random_range(0..12);
        let s = random_state(&mut rng, plies);
        let Some(m) = s.legal_moves().choose(&mut rng).cloned() else {
            continue;
        };
        let next = s.apply_move(&m).unwrap();
        let mover = s.to_move();
        assert_eq!((s.face_up_mask() ^ next.face_up_mask()).count_ones(), 1);
        assert!(!next.is_face_up(s.pawn(mover)));
        assert_eq!(next.face_up_count() + 1, s.face_up_count());
        assert_eq!(next.pawn(mover), m.dest);
        assert_eq!(next.pawn(mover.opponent()), s.pawn(mover.opponent()));
        assert_eq!(next.to_move(), mover.opponent());
        assert_eq!(next.deal(), s.deal());
        // Result is still a valid, re-parseable position.
        assert_eq!(next.to_string().parse::<GameState>().unwrap(), next);
    }
}

#[test]
fn random_playouts_end_within_fourteen_plies() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..2000 {
        let s = random_state(&mut rng, 20);
        assert!(s.is_terminal());
        assert!(s.plies_played() <= 14);
        let score = s.terminal_score().unwrap();
        assert!(score.value().abs() >= 2);
        let expected = match s.to_move() {
            Player::Red => -(s.face_up_count() as i8),
            Player::Blue => s.face_up_count() as i8,
        };
        assert_eq!(score.value(), expected);
    }
}

#[test]
fn illegal_destinations_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let plies = rng.random_range(0..12);
        let s = random_state(&mut rng, plies);
        let legal: BTreeSet<Coord> = s.legal_moves().iter().map(|m| m.dest).collect();
        for c in Coord::all() {
            assert_eq!(s.play(c).is_ok(), legal.contains(&c));
        }
    }
}
