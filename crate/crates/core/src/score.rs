use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{Player, CELLS};

/// Game-length-aware result: the number of cards still face-up when the game
/// ends, positive if red won and negative if blue won.
///
/// Red prefers larger scores and blue smaller ones. A winner therefore wants
/// to finish with as many cards face-up as possible (win fast) while the
/// loser wants as few as possible (lose slowly).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct Score(i8);

impl Score {
    pub fn new(value: i8) -> Option<Score> {
        (2..=CELLS as i8).contains(&value.abs()).then_some(Score(value))
    }

    /// Score of a finished game where `stuck` cannot move.
    pub(crate) fn terminal(stuck: Player, face_up: u32) -> Score {
        let n = face_up as i8;
        match stuck {
            Player::Red => Score(-n),
            Player::Blue => Score(n),
        }
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn winner(self) -> Player {
        if self.0 > 0 {
            Player::Red
        } else {
            Player::Blue
        }
    }

    pub fn face_up_at_end(self) -> u32 {
        self.0.unsigned_abs() as u32
    }

    /// Total game length when the game started from a fresh deal.
    pub fn plies_from_fresh(self) -> u32 {
        CELLS as u32 - self.face_up_at_end()
    }

    pub fn is_win_for(self, player: Player) -> bool {
        self.winner() == player
    }
}

impl TryFrom<i8> for Score {
    type Error = String;

    fn try_from(value: i8) -> Result<Self, Self::Error> {
        Score::new(value).ok_or_else(|| format!("score {value} out of range"))
    }
}

impl From<Score> for i8 {
    fn from(s: Score) -> i8 {
        s.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}
