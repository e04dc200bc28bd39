//! Strong solver and analysis toolkit for Collapsi, a two-player pawn game on
//! a toroidal 4×4 grid of cards.
//!
//! - [`engine`]: board, rules-exact move generation, symmetries, text forms.
//! - [`solver`]: win/loss and game-length-perfect minimax from any position.
//! - [`deals`]: symmetry-reduced enumeration of all deals, random deals.
//! - [`harness`]: parallel batch solving, checkpoints and reports.

pub mod deals;
pub mod engine;
pub mod harness;
mod score;
pub mod solver;

pub use engine::{Card, Coord, Deal, GameState, Move, Player, Symmetry};
pub use score::Score;
pub use solver::{solve_score, solve_win, SolveResult};
