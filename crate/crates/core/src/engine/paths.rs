//! Precomputed step sequences from every cell.
//!
//! A move of length `L` from an origin is any sequence of `L` orthogonal
//! torus steps that never revisits a cell. Whether a sequence is playable
//! in a given position depends only on which cells it enters, so each
//! sequence is stored with the mask of entered cells and legality reduces to
//! a single mask test.

use std::sync::OnceLock;

use super::board::{Coord, CELLS};

/// The origin cell counts as already entered, so a path may not return to it.
pub(crate) const ORIGIN_COUNTS_AS_VISITED: bool = true;

/// A pawn may pass over the opponent's cell; it may only not stop there.
pub(crate) const MAY_PASS_THROUGH_OPPONENT: bool = true;

pub(crate) const MAX_STEPS: usize = 4;

#[derive(Clone, Copy, Debug)]
pub(crate) struct StepPath {
    pub dest: u8,
    pub len: u8,
    /// Every cell entered, destination included, origin excluded.
    pub entered: u16,
    pub cells: [u8; MAX_STEPS],
}

impl StepPath {
    pub fn coords(&self) -> Vec<Coord> {
        self.cells[..self.len as usize]
            .iter()
            .map(|&i| Coord::from_index(i as usize))
            .collect()
    }
}

/// `TABLE[origin][len]`, each list sorted lexicographically by cell index.
type Table = Vec<[Vec<StepPath>; MAX_STEPS + 1]>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

fn build_table() -> Table {
    (0..CELLS)
        .map(|origin| {
            let mut by_len: [Vec<StepPath>; MAX_STEPS + 1] = Default::default();
            let mut cells = Vec::with_capacity(MAX_STEPS);
            let visited = if ORIGIN_COUNTS_AS_VISITED { 1u16 << origin } else { 0 };
            extend(Coord::from_index(origin), visited, &mut cells, &mut by_len);
            for paths in &mut by_len {
                paths.sort_by(|a, b| a.cells[..a.len as usize].cmp(&b.cells[..b.len as usize]));
            }
            by_len
        })
        .collect()
}

fn extend(at: Coord, visited: u16, cells: &mut Vec<u8>, out: &mut [Vec<StepPath>; MAX_STEPS + 1]) {
    if cells.len() == MAX_STEPS {
        return;
    }
    for next in at.neighbors() {
        if visited & next.bit() != 0 {
            continue;
        }
        cells.push(next.index() as u8);
        let mut packed = [0u8; MAX_STEPS];
        packed[..cells.len()].copy_from_slice(cells);
        out[cells.len()].push(StepPath {
            dest: next.index() as u8,
            len: cells.len() as u8,
            entered: cells.iter().fold(0, |m, &c| m | 1 << c),
            cells: packed,
        });
        extend(next, visited | next.bit(), cells, out);
        cells.pop();
    }
}

/// Cells a path may not enter.
#[inline]
fn blocked_cells(face_up: u16, opponent: usize) -> u16 {
    let mut blocked = !face_up;
    if !MAY_PASS_THROUGH_OPPONENT {
        blocked |= 1 << opponent;
    }
    blocked
}

/// Bit set of legal destinations for a pawn on `origin`.
#[inline]
pub(crate) fn destinations(origin: usize, allowance: u8, face_up: u16, opponent: usize) -> u16 {
    let blocked = blocked_cells(face_up, opponent);
    let by_len = &table()[origin];
    let mut dests = 0u16;
    for (len, paths) in by_len.iter().enumerate().skip(1) {
        if allowance & (1 << len) == 0 {
            continue;
        }
        for p in paths {
            if dests & (1 << p.dest) == 0 && p.entered & blocked == 0 {
                dests |= 1 << p.dest;
            }
        }
    }
    dests & !(1 << opponent)
}

/// Shortest, then lexicographically smallest, playable path to `dest`.
pub(crate) fn witness(origin: usize, allowance: u8, face_up: u16, opponent: usize, dest: usize) -> Option<StepPath> {
    if dest == opponent {
        return None;
    }
    let blocked = blocked_cells(face_up, opponent);
    table()[origin]
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(len, _)| allowance & (1 << len) != 0)
        .flat_map(|(_, paths)| paths.iter())
        .find(|p| p.dest as usize == dest && p.entered & blocked == 0)
        .copied()
}
