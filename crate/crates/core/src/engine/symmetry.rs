//! Symmetries of the 4×4 torus.
//!
//! Every symmetry is an affine map `x ↦ D(x + t)` on `Z4 × Z4`: a
//! translation `t` followed by one of the eight linear maps `D` that permute
//! the four unit directions. There are 16 · 8 = 128 of them and all preserve
//! torus adjacency, so they commute with move generation.

use serde::{Deserialize, Serialize};

use super::board::{Card, Coord, Deal, CELLS, SIDE};
use super::state::GameState;

/// Second-joker cells accepted by [`canonicalize`], one per distance class.
pub const JOKER_REPRESENTATIVES: [Coord; 5] = [
    Coord { row: 0, col: 1 },
    Coord { row: 0, col: 2 },
    Coord { row: 1, col: 1 },
    Coord { row: 1, col: 2 },
    Coord { row: 2, col: 2 },
];

/// The square's symmetry group, as linear maps on `(row, col)` mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dihedral {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    /// `(r, c) ↦ (r, -c)`
    MirrorCols,
    /// `(r, c) ↦ (-r, c)`
    MirrorRows,
    /// `(r, c) ↦ (c, r)`
    Transpose,
    /// `(r, c) ↦ (-c, -r)`
    AntiTranspose,
}

impl Dihedral {
    pub const ALL: [Dihedral; 8] = [
        Dihedral::Identity,
        Dihedral::Rotate90,
        Dihedral::Rotate180,
        Dihedral::Rotate270,
        Dihedral::MirrorCols,
        Dihedral::MirrorRows,
        Dihedral::Transpose,
        Dihedral::AntiTranspose,
    ];

    /// Row-major 2×2 integer matrix acting on column vectors `(r, c)`.
    const fn matrix(self) -> [[i8; 2]; 2] {
        match self {
            Dihedral::Identity => [[1, 0], [0, 1]],
            Dihedral::Rotate90 => [[0, 1], [-1, 0]],
            Dihedral::Rotate180 => [[-1, 0], [0, -1]],
            Dihedral::Rotate270 => [[0, -1], [1, 0]],
            Dihedral::MirrorCols => [[1, 0], [0, -1]],
            Dihedral::MirrorRows => [[-1, 0], [0, 1]],
            Dihedral::Transpose => [[0, 1], [1, 0]],
            Dihedral::AntiTranspose => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i8; 2]; 2]) -> Dihedral {
        *Dihedral::ALL
            .iter()
            .find(|d| d.matrix() == m)
            .expect("dihedral group is closed")
    }

    fn apply(self, row: i8, col: i8) -> (i8, i8) {
        let [[a, b], [c, d]] = self.matrix();
        (a * row + b * col, c * row + d * col)
    }

    /// `self ∘ other`
    pub fn compose(self, other: Dihedral) -> Dihedral {
        let x = self.matrix();
        let y = other.matrix();
        let mut m = [[0i8; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        Dihedral::from_matrix(m)
    }

    pub fn inverse(self) -> Dihedral {
        *Dihedral::ALL
            .iter()
            .find(|d| self.compose(**d) == Dihedral::Identity)
            .expect("every element has an inverse")
    }
}

/// Translation by `(row_shift, col_shift)` followed by `dihedral`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub row_shift: u8,
    pub col_shift: u8,
    pub dihedral: Dihedral,
}

fn wrap(v: i8) -> u8 {
    v.rem_euclid(SIDE as i8) as u8
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        row_shift: 0,
        col_shift: 0,
        dihedral: Dihedral::Identity,
    };

    pub fn new(row_shift: u8, col_shift: u8, dihedral: Dihedral) -> Symmetry {
        Symmetry {
            row_shift: row_shift % SIDE as u8,
            col_shift: col_shift % SIDE as u8,
            dihedral,
        }
    }

    /// All 128 symmetries.
    pub fn all() -> impl Iterator<Item = Symmetry> {
        Dihedral::ALL
            .into_iter()
            .flat_map(|d| (0..CELLS as u8).map(move |i| Symmetry::new(i / SIDE as u8, i % SIDE as u8, d)))
    }

    pub fn apply(self, c: Coord) -> Coord {
        let r = (c.row + self.row_shift) as i8;
        let k = (c.col + self.col_shift) as i8;
        let (r, k) = self.dihedral.apply(r, k);
        Coord {
            row: wrap(r),
            col: wrap(k),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        // D1(D2(x + t2) + t1) = D1 D2 (x + t2 + D2⁻¹ t1)
        let (r, c) = other
            .dihedral
            .inverse()
            .apply(self.row_shift as i8, self.col_shift as i8);
        Symmetry {
            row_shift: wrap(other.row_shift as i8 + r),
            col_shift: wrap(other.col_shift as i8 + c),
            dihedral: self.dihedral.compose(other.dihedral),
        }
    }

    pub fn inverse(self) -> Symmetry {
        // D(x + t) = y  ⇔  x = D⁻¹ y − t = D⁻¹ (y − D t)
        let inv = self.dihedral.inverse();
        let (r, c) = self.dihedral.apply(self.row_shift as i8, self.col_shift as i8);
        Symmetry {
            row_shift: wrap(-r),
            col_shift: wrap(-c),
            dihedral: inv,
        }
    }

    pub fn apply_mask(self, mask: u16) -> u16 {
        (0..CELLS)
            .filter(|i| mask & (1 << i) != 0)
            .fold(0, |m, i| m | self.apply(Coord::from_index(i)).bit())
    }
}

impl Deal {
    /// Moves the card at `x` to `t.apply(x)`.
    pub fn transformed(&self, t: Symmetry) -> Deal {
        let mut cells = [Card::Ace; CELLS];
        for (i, &card) in self.cells().iter().enumerate() {
            cells[t.apply(Coord::from_index(i)).index()] = card;
        }
        Deal::from_cells_unchecked(cells)
    }
}

impl GameState {
    pub fn transformed(&self, t: Symmetry) -> GameState {
        GameState::from_parts_unchecked(
            self.deal().transformed(t),
            t.apply_mask(self.face_up_mask()),
            t.apply(self.red()),
            t.apply(self.blue()),
            self.to_move(),
        )
    }
}

/// Lexicographically smallest image of `deal` (row-major, `A < 2 < 3 < 4 < J`)
/// among those with a joker at `(0,0)` and the other joker on one of
/// [`JOKER_REPRESENTATIVES`], together with a symmetry producing it.
pub fn canonicalize(deal: &Deal) -> (Deal, Symmetry) {
    Symmetry::all()
        .map(|t| (deal.transformed(t), t))
        .filter(|(d, _)| {
            let [first, second] = d.jokers();
            first == Coord::new(0, 0) && JOKER_REPRESENTATIVES.contains(&second)
        })
        .min_by(|a, b| a.0.cells().cmp(b.0.cells()))
        .expect("some symmetry places the jokers canonically")
}
