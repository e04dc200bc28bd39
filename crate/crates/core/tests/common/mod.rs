//! Reference implementations used as oracles. They go through the public
//! API only and favour obviousness over speed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use collapsi::deals::random_deal;
use collapsi::engine::{Card, Coord, Direction, GameState};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Every destination reachable by a plain depth-first walk.
pub fn naive_destinations(s: &GameState) -> BTreeSet<Coord> {
    let origin = s.pawn(s.to_move());
    let opponent = s.pawn(s.to_move().opponent());
    let lengths: Vec<usize> = match s.deal().card(origin) {
        Card::Ace => vec![1],
        Card::Two => vec![2],
        Card::Three => vec![3],
        Card::Four => vec![4],
        Card::Joker => vec![1, 2, 3, 4],
    };
    let mut out = BTreeSet::new();
    for len in lengths {
        let mut visited = vec![origin];
        walk(s, origin, len, &mut visited, &mut out);
    }
    out.remove(&opponent);
    out
}

fn walk(s: &GameState, at: Coord, left: usize, visited: &mut Vec<Coord>, out: &mut BTreeSet<Coord>) {
    if left == 0 {
        out.insert(at);
        return;
    }
    for dir in [Direction::Up, Direction::Down, Direction::Left, Direction::Right] {
        let next = at.step(dir);
        if visited.contains(&next) || !s.is_face_up(next) {
            continue;
        }
        visited.push(next);
        walk(s, next, left - 1, visited, out);
        visited.pop();
    }
}

/// Unpruned minimax over the public move list.
pub fn plain_minimax(s: &GameState) -> i8 {
    let moves = s.legal_moves();
    if moves.is_empty() {
        return s.terminal_score().unwrap().value();
    }
    let values = moves.iter().map(|m| plain_minimax(&s.apply_move(m).unwrap()));
    match s.to_move() {
        collapsi::Player::Red => values.max().unwrap(),
        collapsi::Player::Blue => values.min().unwrap(),
    }
}

/// A random deal played forward by `plies` random moves, stopping early if
/// the game ends.
pub fn random_state<R: Rng>(rng: &mut R, plies: usize) -> GameState {
    let mut s = GameState::initial(random_deal(rng));
    for _ in 0..plies {
        let moves = s.legal_moves();
        match moves.choose(rng) {
            Some(m) => s = s.apply_move(m).unwrap(),
            None => break,
        }
    }
    s
}

/// Random state with at most `max_face_up` face-up cards that is still
/// being played, or `None` if the random game ended first.
pub fn random_late_state<R: Rng>(rng: &mut R, max_face_up: u32) -> Option<GameState> {
    let plies = 16 - max_face_up as usize;
    let s = random_state(rng, plies);
    (s.face_up_count() <= max_face_up).then_some(s)
}
