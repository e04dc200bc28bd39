use serde::{Deserialize, Serialize};

use super::board::{Card, Coord, Deal, Player, CELLS};
use super::paths::{self, ORIGIN_COUNTS_AS_VISITED};
use super::{Error, Result};
use crate::score::Score;

const ALL_FACE_UP: u16 = 0xffff;

/// A position: the original deal, which cards are still face-up, both pawns
/// and the side to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    deal: Deal,
    face_up: u16,
    red: Coord,
    blue: Coord,
    to_move: Player,
}

/// A move, identified by its destination. `path` is one witness: the cells
/// entered, in order, ending on `dest`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub dest: Coord,
    pub path: Vec<Coord>,
}

impl Move {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

impl GameState {
    /// Builds a state, checking every position invariant.
    pub fn new(deal: Deal, face_up: u16, red: Coord, blue: Coord, to_move: Player) -> Result<GameState> {
        let state = GameState {
            deal,
            face_up,
            red,
            blue,
            to_move,
        };
        state.validate()?;
        Ok(state)
    }

    /// Fresh game: red on the first joker in row-major order, blue on the
    /// other, every card face-up, red to move.
    pub fn initial(deal: Deal) -> GameState {
        let [red, blue] = deal.jokers();
        GameState {
            deal,
            face_up: ALL_FACE_UP,
            red,
            blue,
            to_move: Player::Red,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.red == self.blue {
            return Err(Error::PawnsOverlap(self.red));
        }
        for player in [Player::Red, Player::Blue] {
            if !self.is_face_up(self.pawn(player)) {
                return Err(Error::PawnOnFaceDown(player));
            }
        }
        let red_turn = self.plies_played().is_multiple_of(2);
        if red_turn != (self.to_move == Player::Red) {
            return Err(Error::ParityMismatch {
                face_up: self.face_up_count(),
                to_move: self.to_move,
            });
        }
        Ok(())
    }

    pub fn deal(&self) -> &Deal {
        &self.deal
    }

    pub fn face_up_mask(&self) -> u16 {
        self.face_up
    }

    pub fn face_up_count(&self) -> u32 {
        self.face_up.count_ones()
    }

    pub fn is_face_up(&self, at: Coord) -> bool {
        self.face_up & at.bit() != 0
    }

    /// Plies played since the deal, counting each flipped card as one ply.
    pub fn plies_played(&self) -> u32 {
        CELLS as u32 - self.face_up_count()
    }

    pub fn is_fresh(&self) -> bool {
        self.face_up == ALL_FACE_UP
    }

    pub fn red(&self) -> Coord {
        self.red
    }

    pub fn blue(&self) -> Coord {
        self.blue
    }

    pub fn pawn(&self, player: Player) -> Coord {
        match player {
            Player::Red => self.red,
            Player::Blue => self.blue,
        }
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    /// Card value the mover stands on; governs this ply's step count.
    pub fn mover_card(&self) -> Card {
        self.deal.card(self.pawn(self.to_move))
    }

    /// Legal destinations of the side to move as a cell bit set.
    pub fn destination_mask(&self) -> u16 {
        let origin = self.pawn(self.to_move);
        let opponent = self.pawn(self.to_move.opponent());
        paths::destinations(
            origin.index(),
            self.deal.card(origin).allowance(),
            self.face_up,
            opponent.index(),
        )
    }

    /// One move per reachable destination, in row-major destination order.
    pub fn legal_moves(&self) -> Vec<Move> {
        let dests = self.destination_mask();
        (0..CELLS)
            .filter(|i| dests & (1 << i) != 0)
            .map(|i| self.witness_move(Coord::from_index(i)).expect("destination has a path"))
            .collect()
    }

    /// The canonical witness for a destination, if it is legal.
    pub fn witness_move(&self, dest: Coord) -> Option<Move> {
        let origin = self.pawn(self.to_move);
        let opponent = self.pawn(self.to_move.opponent());
        paths::witness(
            origin.index(),
            self.deal.card(origin).allowance(),
            self.face_up,
            opponent.index(),
            dest.index(),
        )
        .map(|p| Move { dest, path: p.coords() })
    }

    pub fn is_legal_destination(&self, dest: Coord) -> bool {
        self.destination_mask() & dest.bit() != 0
    }

    pub fn is_terminal(&self) -> bool {
        self.destination_mask() == 0
    }

    /// Signed face-up count: positive when red has won (blue is stuck).
    pub fn terminal_score(&self) -> Result<Score> {
        if !self.is_terminal() {
            return Err(Error::NotTerminal);
        }
        Ok(Score::terminal(self.to_move, self.face_up_count()))
    }

    /// Applies `m` after checking that its witness path is playable.
    pub fn apply_move(&self, m: &Move) -> Result<GameState> {
        if !self.is_playable_path(&m.path) || m.path.last() != Some(&m.dest) {
            return Err(Error::IllegalMove { dest: m.dest });
        }
        Ok(self.child(m.dest))
    }

    /// Plays to `dest` along any legal path.
    pub fn play(&self, dest: Coord) -> Result<GameState> {
        if !self.is_legal_destination(dest) {
            return Err(Error::IllegalMove { dest });
        }
        Ok(self.child(dest))
    }

    fn is_playable_path(&self, path: &[Coord]) -> bool {
        let origin = self.pawn(self.to_move);
        let opponent = self.pawn(self.to_move.opponent());
        let Some(&dest) = path.last() else {
            return false;
        };
        if self.mover_card().allowance() & (1 << path.len().min(7)) == 0 || dest == opponent {
            return false;
        }
        let mut entered = if ORIGIN_COUNTS_AS_VISITED { origin.bit() } else { 0 };
        let mut prev = origin;
        for &cell in path {
            if !prev.is_adjacent(cell) || entered & cell.bit() != 0 || !self.is_face_up(cell) {
                return false;
            }
            if !paths::MAY_PASS_THROUGH_OPPONENT && cell == opponent {
                return false;
            }
            entered |= cell.bit();
            prev = cell;
        }
        true
    }

    /// Successor after the mover goes to `dest`; no legality check.
    pub(crate) fn child(&self, dest: Coord) -> GameState {
        let mut next = *self;
        let origin = self.pawn(self.to_move);
        next.face_up &= !origin.bit();
        match self.to_move {
            Player::Red => next.red = dest,
            Player::Blue => next.blue = dest,
        }
        next.to_move = self.to_move.opponent();
        next
    }

    /// Same board with the pawns' colours exchanged and the other side to
    /// move. The result breaks the move-parity convention of real games (red
    /// moves on even plies), so it is only useful for analysis.
    pub fn with_colors_swapped(&self) -> GameState {
        GameState {
            deal: self.deal,
            face_up: self.face_up,
            red: self.blue,
            blue: self.red,
            to_move: self.to_move.opponent(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        deal: Deal,
        face_up: u16,
        red: Coord,
        blue: Coord,
        to_move: Player,
    ) -> GameState {
        GameState {
            deal,
            face_up,
            red,
            blue,
            to_move,
        }
    }
}
