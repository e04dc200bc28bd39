//! Rules of Collapsi on the 4×4 toroidal board.
//!
//! Cells are indexed `(row, col)` from the top-left; the flat index of a cell
//! is `4 * row + col`, which is also its bit in every 16-bit cell mask.

mod board;
mod paths;
mod state;
mod symmetry;
mod text;

pub use board::{Card, Coord, Deal, Direction, Player, CELLS, SIDE};
pub use state::{GameState, Move};
pub use symmetry::{canonicalize, Dihedral, Symmetry, JOKER_REPRESENTATIVES};

pub(crate) use paths::destinations;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("deal must contain {expected} {card}, found {found}")]
    CardCount { card: Card, expected: usize, found: usize },
    #[error("{0} pawn stands on a face-down card")]
    PawnOnFaceDown(Player),
    #[error("both pawns occupy {0}")]
    PawnsOverlap(Coord),
    #[error("{face_up} face-up cards is inconsistent with {to_move} to move")]
    ParityMismatch { face_up: u32, to_move: Player },
    #[error("illegal move to {dest}")]
    IllegalMove { dest: Coord },
    #[error("position is not terminal")]
    NotTerminal,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
