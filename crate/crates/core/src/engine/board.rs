use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Error, Result};

/// Width and height of the board.
pub const SIDE: usize = 4;
pub const CELLS: usize = SIDE * SIDE;

/// Card face. The derived order `A < 2 < 3 < 4 < J` is the one used for
/// lexicographic comparison of deals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Card {
    Ace,
    Two,
    Three,
    Four,
    Joker,
}

impl Card {
    pub const ALL: [Card; 5] = [Card::Ace, Card::Two, Card::Three, Card::Four, Card::Joker];

    /// How many copies of this card a deal holds.
    pub const fn copies(self) -> usize {
        match self {
            Card::Ace | Card::Two | Card::Three => 4,
            Card::Four | Card::Joker => 2,
        }
    }

    /// Exact step count for numbered cards; `None` for a joker.
    pub const fn steps(self) -> Option<u8> {
        match self {
            Card::Ace => Some(1),
            Card::Two => Some(2),
            Card::Three => Some(3),
            Card::Four => Some(4),
            Card::Joker => None,
        }
    }

    /// Allowed path lengths as a bit set: bit `L` set means a move of exactly
    /// `L` steps is permitted.
    pub const fn allowance(self) -> u8 {
        match self.steps() {
            Some(n) => 1 << n,
            None => 0b1_1110,
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            Card::Ace => 'A',
            Card::Two => '2',
            Card::Three => '3',
            Card::Four => '4',
            Card::Joker => 'J',
        }
    }

    pub fn from_symbol(c: char) -> Option<Card> {
        Card::ALL.into_iter().find(|card| card.symbol() == c)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub row: u8,
    pub col: u8,
}

impl Coord {
    /// # Panics
    /// If either component is outside `0..4`.
    pub fn new(row: u8, col: u8) -> Coord {
        assert!(
            (row as usize) < SIDE && (col as usize) < SIDE,
            "coordinate ({row},{col}) off the board"
        );
        Coord { row, col }
    }

    pub fn try_new(row: u8, col: u8) -> Option<Coord> {
        ((row as usize) < SIDE && (col as usize) < SIDE).then_some(Coord { row, col })
    }

    pub const fn from_index(index: usize) -> Coord {
        Coord {
            row: (index / SIDE) as u8,
            col: (index % SIDE) as u8,
        }
    }

    pub const fn index(self) -> usize {
        self.row as usize * SIDE + self.col as usize
    }

    pub const fn bit(self) -> u16 {
        1 << self.index()
    }

    /// Orthogonal neighbour, wrapping around the board edges.
    pub const fn step(self, dir: Direction) -> Coord {
        let n = SIDE as u8;
        match dir {
            Direction::Up => Coord {
                row: (self.row + n - 1) % n,
                col: self.col,
            },
            Direction::Down => Coord {
                row: (self.row + 1) % n,
                col: self.col,
            },
            Direction::Left => Coord {
                row: self.row,
                col: (self.col + n - 1) % n,
            },
            Direction::Right => Coord {
                row: self.row,
                col: (self.col + 1) % n,
            },
        }
    }

    pub fn neighbors(self) -> [Coord; 4] {
        Direction::ALL.map(|d| self.step(d))
    }

    pub fn is_adjacent(self, other: Coord) -> bool {
        self.neighbors().contains(&other)
    }

    pub fn all() -> impl Iterator<Item = Coord> {
        (0..CELLS).map(Coord::from_index)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Red,
    Blue,
}

impl Player {
    pub const fn opponent(self) -> Player {
        match self {
            Player::Red => Player::Blue,
            Player::Blue => Player::Red,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Red => "red",
            Player::Blue => "blue",
        })
    }
}

/// A layout of the sixteen cards, row-major.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deal {
    cells: [Card; CELLS],
}

impl Deal {
    /// The fixed card multiset in sorted order.
    pub const MULTISET: [Card; CELLS] = [
        Card::Ace,
        Card::Ace,
        Card::Ace,
        Card::Ace,
        Card::Two,
        Card::Two,
        Card::Two,
        Card::Two,
        Card::Three,
        Card::Three,
        Card::Three,
        Card::Three,
        Card::Four,
        Card::Four,
        Card::Joker,
        Card::Joker,
    ];

    pub fn new(cells: [Card; CELLS]) -> Result<Deal> {
        for card in Card::ALL {
            let found = cells.iter().filter(|&&c| c == card).count();
            if found != card.copies() {
                return Err(Error::CardCount {
                    card,
                    expected: card.copies(),
                    found,
                });
            }
        }
        Ok(Deal { cells })
    }

    /// Skips the multiset check; callers must only pass permutations of
    /// [`Deal::MULTISET`].
    pub(crate) const fn from_cells_unchecked(cells: [Card; CELLS]) -> Deal {
        Deal { cells }
    }

    pub fn cells(&self) -> &[Card; CELLS] {
        &self.cells
    }

    pub fn card(&self, at: Coord) -> Card {
        self.cells[at.index()]
    }

    /// Joker cells in row-major order.
    pub fn jokers(&self) -> [Coord; 2] {
        let mut found = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Card::Joker)
            .map(|(i, _)| Coord::from_index(i));
        let first = found.next().expect("deal holds two jokers");
        let second = found.next().expect("deal holds two jokers");
        [first, second]
    }
}

impl fmt::Debug for Deal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Deal({self})")
    }
}
