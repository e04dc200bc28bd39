//! Exact solving by full-depth minimax with alpha-beta pruning.
//!
//! Positions are scored with [`Score`]: red maximises, blue minimises, and
//! only terminal positions are evaluated. Games last at most 14 plies so no
//! depth limit is needed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{destinations, Coord, GameState, Move, Player, CELLS};
pub use crate::score::Score;

/// Widest possible search window; every score lies strictly inside it.
const WINDOW: (i8, i8) = (-(CELLS as i8) - 1, CELLS as i8 + 1);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Cache bounds per position for the duration of one search. Results are
    /// identical with or without it.
    pub memo: bool,
    /// Also extract the principal variation.
    pub principal_variation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub score: Score,
    /// Absent iff the position is terminal.
    pub best_move: Option<Move>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal_variation: Option<Vec<Move>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinResult {
    pub mover_wins: bool,
    pub witness: Option<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("game length is only defined from a fresh deal")]
    NotFresh,
}

/// Compact position used inside the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    face_up: u16,
    red: u8,
    blue: u8,
    red_to_move: bool,
}

impl Node {
    fn from_state(s: &GameState) -> Node {
        Node {
            face_up: s.face_up_mask(),
            red: s.red().index() as u8,
            blue: s.blue().index() as u8,
            red_to_move: s.to_move() == Player::Red,
        }
    }

    #[inline]
    fn mover(self) -> usize {
        if self.red_to_move {
            self.red as usize
        } else {
            self.blue as usize
        }
    }

    #[inline]
    fn other(self) -> usize {
        if self.red_to_move {
            self.blue as usize
        } else {
            self.red as usize
        }
    }

    #[inline]
    fn child(self, dest: u8) -> Node {
        let mut next = self;
        next.face_up &= !(1 << self.mover());
        if self.red_to_move {
            next.red = dest;
        } else {
            next.blue = dest;
        }
        next.red_to_move = !self.red_to_move;
        next
    }

    #[inline]
    fn key(self) -> u32 {
        self.face_up as u32 | (self.red as u32) << 16 | (self.blue as u32) << 20 | (self.red_to_move as u32) << 24
    }

    #[inline]
    fn terminal_value(self) -> i8 {
        let n = self.face_up.count_ones() as i8;
        if self.red_to_move {
            -n
        } else {
            n
        }
    }
}

#[derive(Clone, Copy)]
struct Bounds {
    lower: i8,
    upper: i8,
}

/// Per-search context: card allowances of the deal and the child ordering.
struct Search {
    allowance: [u8; CELLS],
    /// Cells sorted by card value descending, then row-major.
    order: [u8; CELLS],
    bounds: Option<HashMap<u32, Bounds>>,
    wins: Option<HashMap<u32, bool>>,
}

impl Search {
    fn new(state: &GameState, memo: bool) -> Search {
        let cells = state.deal().cells();
        let mut allowance = [0u8; CELLS];
        for (a, card) in allowance.iter_mut().zip(cells) {
            *a = card.allowance();
        }
        let mut order: [u8; CELLS] = std::array::from_fn(|i| i as u8);
        order.sort_by(|&a, &b| cells[b as usize].cmp(&cells[a as usize]).then(a.cmp(&b)));
        Search {
            allowance,
            order,
            bounds: memo.then(HashMap::new),
            wins: memo.then(HashMap::new),
        }
    }

    #[inline]
    fn destinations(&self, n: Node) -> u16 {
        let mover = n.mover();
        destinations(mover, self.allowance[mover], n.face_up, n.other())
    }

    /// Fail-soft alpha-beta. The result `v` satisfies: `v <= alpha` means the
    /// true value is at most `v`, `v >= beta` means it is at least `v`, and
    /// otherwise `v` is exact.
    fn value(&mut self, n: Node, mut alpha: i8, mut beta: i8) -> i8 {
        let dests = self.destinations(n);
        if dests == 0 {
            return n.terminal_value();
        }

        // A mover that is not stuck makes at least one more ply, and a win for
        // the side to move needs the opponent stuck right after it.
        let k = n.face_up.count_ones() as i8;
        let (lo, hi) = if n.red_to_move {
            (-(k - 2), k - 1)
        } else {
            (-(k - 1), k - 2)
        };
        if alpha >= hi {
            return hi;
        }
        if beta <= lo {
            return lo;
        }

        let key = n.key();
        if let Some(b) = self.bounds.as_ref().and_then(|m| m.get(&key)).copied() {
            if b.lower >= beta {
                return b.lower;
            }
            if b.upper <= alpha {
                return b.upper;
            }
            if b.lower == b.upper {
                return b.lower;
            }
            alpha = alpha.max(b.lower);
            beta = beta.min(b.upper);
        }
        let (alpha0, beta0) = (alpha, beta);

        let mut best;
        if n.red_to_move {
            best = i8::MIN;
            for cell in self.order {
                if dests & (1 << cell) == 0 {
                    continue;
                }
                let v = self.value(n.child(cell), alpha, beta);
                if v > best {
                    best = v;
                    if v > alpha {
                        alpha = v;
                        if alpha >= beta {
                            break;
                        }
                    }
                }
            }
        } else {
            best = i8::MAX;
            for cell in self.order {
                if dests & (1 << cell) == 0 {
                    continue;
                }
                let v = self.value(n.child(cell), alpha, beta);
                if v < best {
                    best = v;
                    if v < beta {
                        beta = v;
                        if alpha >= beta {
                            break;
                        }
                    }
                }
            }
        }

        if let Some(memo) = self.bounds.as_mut() {
            let entry = memo.entry(key).or_insert(Bounds {
                lower: i8::MIN,
                upper: i8::MAX,
            });
            if best <= alpha0 {
                entry.upper = entry.upper.min(best);
            } else if best >= beta0 {
                entry.lower = entry.lower.max(best);
            } else {
                entry.lower = best;
                entry.upper = best;
            }
        }
        best
    }

    /// Whether the side to move can force a win.
    fn mover_wins(&mut self, n: Node) -> bool {
        let dests = self.destinations(n);
        if dests == 0 {
            return false;
        }
        let key = n.key();
        if let Some(&w) = self.wins.as_ref().and_then(|m| m.get(&key)) {
            return w;
        }
        let mut wins = false;
        for cell in self.order {
            if dests & (1 << cell) != 0 && !self.mover_wins(n.child(cell)) {
                wins = true;
                break;
            }
        }
        if let Some(memo) = self.wins.as_mut() {
            memo.insert(key, wins);
        }
        wins
    }

    fn count_games(&self, n: Node) -> u64 {
        let dests = self.destinations(n);
        if dests == 0 {
            return 1;
        }
        (0..CELLS as u8)
            .filter(|&c| dests & (1 << c) != 0)
            .map(|c| self.count_games(n.child(c)))
            .sum()
    }

    /// Exact value and the row-major-first child achieving it.
    fn root(&mut self, n: Node) -> (i8, Option<u8>) {
        let dests = self.destinations(n);
        if dests == 0 {
            return (n.terminal_value(), None);
        }
        let (mut alpha, mut beta) = WINDOW;
        let mut best: Option<(i8, u8)> = None;
        for cell in 0..CELLS as u8 {
            if dests & (1 << cell) == 0 {
                continue;
            }
            let v = self.value(n.child(cell), alpha, beta);
            // Siblings are searched with the best value so far as the bound,
            // so a later child can only replace the best by strictly
            // improving on it; equal-valued later children never do.
            let better = match best {
                None => true,
                Some((b, _)) if n.red_to_move => v > b,
                Some((b, _)) => v < b,
            };
            if better {
                best = Some((v, cell));
                if n.red_to_move {
                    alpha = v;
                } else {
                    beta = v;
                }
            }
        }
        let (v, cell) = best.expect("non-terminal node has a child");
        (v, Some(cell))
    }
}

/// Minimax value and best move under game-length-perfect play.
///
/// Among equally scored moves the one with the smallest destination in
/// row-major order is returned; its path is the shortest, then
/// lexicographically smallest, witness.
pub fn solve_score(state: &GameState) -> SolveResult {
    solve_score_with(state, SolveOptions::default())
}

pub fn solve_score_with(state: &GameState, options: SolveOptions) -> SolveResult {
    let mut search = Search::new(state, options.memo);
    let (value, cell) = search.root(Node::from_state(state));
    let score = Score::new(value).expect("search values are valid scores");
    let best_move = cell.map(|c| {
        state
            .witness_move(Coord::from_index(c as usize))
            .expect("chosen destination is legal")
    });
    let principal_variation = options
        .principal_variation
        .then(|| principal_variation(state, best_move.clone(), options.memo));
    SolveResult {
        score,
        best_move,
        principal_variation,
    }
}

fn principal_variation(state: &GameState, first: Option<Move>, memo: bool) -> Vec<Move> {
    let mut line = Vec::new();
    let mut current = *state;
    let mut next = first;
    while let Some(m) = next {
        current = current.play(m.dest).expect("best move is legal");
        line.push(m);
        next = solve_score_with(
            &current,
            SolveOptions {
                memo,
                principal_variation: false,
            },
        )
        .best_move;
    }
    line
}

/// Win/loss only: does the side to move have a forced win, and if so one
/// winning move.
pub fn solve_win(state: &GameState) -> WinResult {
    solve_win_with(state, SolveOptions::default())
}

pub fn solve_win_with(state: &GameState, options: SolveOptions) -> WinResult {
    let mut search = Search::new(state, options.memo);
    let root = Node::from_state(state);
    let dests = search.destinations(root);
    let order = search.order;
    let winning = order
        .into_iter()
        .filter(|&c| dests & (1 << c) != 0)
        .find(|&c| !search.mover_wins(root.child(c)));
    WinResult {
        mover_wins: winning.is_some(),
        witness: winning.map(|c| {
            state
                .witness_move(Coord::from_index(c as usize))
                .expect("winning destination is legal")
        }),
    }
}

/// Number of distinct complete games from `state`, with moves identified by
/// destination.
pub fn count_games(state: &GameState) -> u64 {
    Search::new(state, false).count_games(Node::from_state(state))
}

/// Length of a game from a fresh deal under perfect play.
pub fn plies_to_end(initial: &GameState, result: &SolveResult) -> Result<u32, SolveError> {
    if !initial.is_fresh() {
        return Err(SolveError::NotFresh);
    }
    Ok(result.score.plies_from_fresh())
}
