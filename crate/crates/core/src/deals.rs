//! Symmetry-reduced enumeration of every deal.
//!
//! Translating the torus puts a joker on `(0,0)`; reflections then leave the
//! second joker in one of five distance classes. Each class stands for as many
//! of the 15 possible second-joker cells as it has members, which becomes the
//! weight of every deal enumerated in it. Within a class the remaining 14
//! cells are filled by choosing the aces' cells, then the 2s' among what is
//! left, then the 3s', with the two 4s taking the last two cells.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Card, Coord, Deal, GameState, CELLS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JokerClass {
    pub representative: Coord,
    pub weight: u64,
}

pub const JOKER_CLASSES: [JokerClass; 5] = [
    JokerClass {
        representative: Coord { row: 0, col: 1 },
        weight: 4,
    },
    JokerClass {
        representative: Coord { row: 0, col: 2 },
        weight: 2,
    },
    JokerClass {
        representative: Coord { row: 1, col: 1 },
        weight: 4,
    },
    JokerClass {
        representative: Coord { row: 1, col: 2 },
        weight: 4,
    },
    JokerClass {
        representative: Coord { row: 2, col: 2 },
        weight: 1,
    },
];

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Fillings of the 14 free cells for one joker placement.
pub fn fills_per_class() -> u64 {
    binomial(14, 4) * binomial(10, 4) * binomial(6, 4)
}

/// Number of enumerated deals.
pub fn enumeration_total() -> u64 {
    JOKER_CLASSES.len() as u64 * fills_per_class()
}

/// Number of deals the enumeration represents once weighted.
pub fn weighted_total() -> u64 {
    JOKER_CLASSES.iter().map(|c| c.weight).sum::<u64>() * fills_per_class()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DealsError {
    #[error("deal index {0} out of range")]
    OutOfRange(u64),
    #[error("invalid shard {0:?}: expected k/n with 0 <= k < n")]
    BadShard(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DealIndex {
    pub joker_class: u8,
    pub fill_rank: u64,
}

impl DealIndex {
    pub fn from_flat(i: u64) -> Result<DealIndex, DealsError> {
        if i >= enumeration_total() {
            return Err(DealsError::OutOfRange(i));
        }
        let per = fills_per_class();
        Ok(DealIndex {
            joker_class: (i / per) as u8,
            fill_rank: i % per,
        })
    }

    pub fn flat(self) -> u64 {
        self.joker_class as u64 * fills_per_class() + self.fill_rank
    }

    pub fn weight(self) -> u64 {
        JOKER_CLASSES[self.joker_class as usize].weight
    }
}

/// Lexicographic unranking of a `k`-subset of `0..n`.
pub fn unrank_combination(n: usize, k: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut next = 0;
    for remaining in (1..=k).rev() {
        loop {
            let with_next = binomial((n - next - 1) as u64, (remaining - 1) as u64);
            if rank < with_next {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with_next;
            next += 1;
        }
    }
}

/// Inverse of [`unrank_combination`] for a strictly increasing subset.
pub fn rank_combination(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut rank = 0;
    let mut start = 0;
    for (i, &c) in subset.iter().enumerate() {
        for skipped in start..c {
            rank += binomial((n - skipped - 1) as u64, (k - i - 1) as u64);
        }
        start = c + 1;
    }
    rank
}

/// The enumerated deal at `index`.
pub fn deal_at(index: DealIndex) -> Result<Deal, DealsError> {
    if index.joker_class as usize >= JOKER_CLASSES.len() || index.fill_rank >= fills_per_class() {
        return Err(DealsError::OutOfRange(index.flat()));
    }
    let second = JOKER_CLASSES[index.joker_class as usize].representative.index();
    let mut free: Vec<usize> = (1..CELLS).filter(|&i| i != second).collect();
    let mut cells = [Card::Four; CELLS];
    cells[0] = Card::Joker;
    cells[second] = Card::Joker;

    let r10 = binomial(10, 4);
    let r6 = binomial(6, 4);
    let three_rank = index.fill_rank % r6;
    let two_rank = index.fill_rank / r6 % r10;
    let ace_rank = index.fill_rank / r6 / r10;

    let mut chosen = Vec::with_capacity(4);
    for (card, rank) in [(Card::Ace, ace_rank), (Card::Two, two_rank), (Card::Three, three_rank)] {
        unrank_combination(free.len(), 4, rank, &mut chosen);
        for &slot in &chosen {
            cells[free[slot]] = card;
        }
        // Drop the chosen slots; indices are increasing so remove from the back.
        for &slot in chosen.iter().rev() {
            free.remove(slot);
        }
    }
    debug_assert_eq!(free.len(), 2);
    Ok(Deal::new(cells).expect("unranked layout has the full multiset"))
}

/// Inverse of [`deal_at`] for deals in enumerated form.
pub fn index_of(deal: &Deal) -> Option<DealIndex> {
    let [first, second] = deal.jokers();
    if first != Coord::new(0, 0) {
        return None;
    }
    let class = JOKER_CLASSES.iter().position(|c| c.representative == second)?;
    let mut free: Vec<usize> = (1..CELLS).filter(|&i| i != second.index()).collect();
    let mut rank = 0;
    for (card, radix) in [
        (Card::Ace, binomial(10, 4) * binomial(6, 4)),
        (Card::Two, binomial(6, 4)),
        (Card::Three, 1),
    ] {
        let slots: Vec<usize> = (0..free.len()).filter(|&s| deal.cells()[free[s]] == card).collect();
        rank += rank_combination(free.len(), &slots) * radix;
        for &s in slots.iter().rev() {
            free.remove(s);
        }
    }
    Some(DealIndex {
        joker_class: class as u8,
        fill_rank: rank,
    })
}

/// Work split `k/n`: shard `k` takes the flat indices congruent to `k` mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: u64, count: u64) -> Result<Shard, DealsError> {
        if count == 0 || index >= count {
            return Err(DealsError::BadShard(format!("{index}/{count}")));
        }
        Ok(Shard { index, count })
    }

    /// Number of deals in this shard.
    pub fn len(&self) -> u64 {
        let total = enumeration_total();
        if self.index >= total {
            0
        } else {
            (total - self.index).div_ceil(self.count)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of the shard's `position`-th deal.
    pub fn flat_index(&self, position: u64) -> u64 {
        self.index + position * self.count
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = DealsError;

    fn from_str(s: &str) -> Result<Shard, DealsError> {
        let bad = || DealsError::BadShard(s.to_string());
        let (k, n) = s.split_once('/').ok_or_else(bad)?;
        let k = k.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        Shard::new(k, n).map_err(|_| bad())
    }
}

impl TryFrom<String> for Shard {
    type Error = DealsError;

    fn try_from(s: String) -> Result<Shard, DealsError> {
        s.parse()
    }
}

impl From<Shard> for String {
    fn from(s: Shard) -> String {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumeratedDeal {
    pub index: DealIndex,
    pub deal: Deal,
    pub weight: u64,
}

/// Deals of one shard in increasing index order.
pub fn enumerate(shard: Shard) -> impl Iterator<Item = EnumeratedDeal> {
    enumerate_range(shard, 0, shard.len())
}

/// Positions `start..end` of a shard.
pub fn enumerate_range(shard: Shard, start: u64, end: u64) -> impl Iterator<Item = EnumeratedDeal> {
    (start..end.min(shard.len())).map(move |pos| {
        let index = DealIndex::from_flat(shard.flat_index(pos)).expect("shard position in range");
        EnumeratedDeal {
            index,
            deal: deal_at(index).expect("index in range"),
            weight: index.weight(),
        }
    })
}

/// Uniformly random layout of the 16 cards.
pub fn random_deal<R: Rng + ?Sized>(rng: &mut R) -> Deal {
    let mut cells = Deal::MULTISET;
    cells.shuffle(rng);
    Deal::new(cells).expect("a permutation keeps the multiset")
}

/// Red on the first joker in row-major order, blue on the other.
pub fn initial_state(deal: &Deal) -> GameState {
    GameState::initial(*deal)
}
