//! Text forms.
//!
//! Deal: four rows of four symbols from `A234J`, separated by `/`, top row
//! first, e.g. `A223/4A2J/3A23/J3A4`.
//!
//! State: `<deal> [mask:<hex>] r(<row>,<col>) b(<row>,<col>) <r|b>`. The deal
//! is always the original layout; bit `4 * row + col` of the 16-bit mask is
//! set for face-up cells, and an omitted mask means every card is face-up.

use std::fmt;
use std::str::FromStr;

use super::board::{Card, Coord, Deal, Player, CELLS, SIDE};
use super::state::GameState;
use super::Error;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

impl fmt::Display for Deal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, card) in self.cells().iter().enumerate() {
            if i > 0 && i % SIDE == 0 {
                f.write_str("/")?;
            }
            write!(f, "{card}")?;
        }
        Ok(())
    }
}

impl FromStr for Deal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Deal, Error> {
        let rows: Vec<&str> = s.trim().split('/').collect();
        if rows.len() != SIDE {
            return Err(malformed(format!(
                "expected {SIDE} rows separated by '/', got {}",
                rows.len()
            )));
        }
        let mut cells = [Card::Ace; CELLS];
        for (r, row) in rows.iter().enumerate() {
            let symbols: Vec<char> = row.chars().collect();
            if symbols.len() != SIDE {
                return Err(malformed(format!(
                    "row {r} has {} cards, expected {SIDE}",
                    symbols.len()
                )));
            }
            for (c, &sym) in symbols.iter().enumerate() {
                cells[r * SIDE + c] = Card::from_symbol(sym.to_ascii_uppercase())
                    .ok_or_else(|| malformed(format!("unknown card {sym:?} at ({r},{c})")))?;
            }
        }
        Deal::new(cells)
    }
}

fn parse_pawn(token: &str, tag: char) -> Result<Coord, Error> {
    let inner = token
        .strip_prefix(tag)
        .and_then(|t| t.strip_prefix('('))
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| malformed(format!("expected {tag}(<row>,<col>), got {token:?}")))?;
    let (row, col) = inner
        .split_once(',')
        .ok_or_else(|| malformed(format!("expected <row>,<col> in {token:?}")))?;
    let row: u8 = row
        .trim()
        .parse()
        .map_err(|_| malformed(format!("bad row in {token:?}")))?;
    let col: u8 = col
        .trim()
        .parse()
        .map_err(|_| malformed(format!("bad column in {token:?}")))?;
    Coord::try_new(row, col).ok_or_else(|| malformed(format!("{token:?} is off the board")))
}

impl FromStr for GameState {
    type Err = Error;

    fn from_str(s: &str) -> Result<GameState, Error> {
        let mut tokens = s.split_whitespace().peekable();
        let deal: Deal = tokens.next().ok_or_else(|| malformed("empty state"))?.parse()?;
        let face_up = match tokens.peek().and_then(|t| t.strip_prefix("mask:")) {
            Some(hex) => {
                if hex.len() != 4 {
                    return Err(malformed(format!("mask must be 4 hex digits, got {hex:?}")));
                }
                let mask = u16::from_str_radix(hex, 16).map_err(|_| malformed(format!("bad mask {hex:?}")))?;
                tokens.next();
                mask
            }
            None => 0xffff,
        };
        let red = parse_pawn(tokens.next().ok_or_else(|| malformed("missing red pawn"))?, 'r')?;
        let blue = parse_pawn(tokens.next().ok_or_else(|| malformed("missing blue pawn"))?, 'b')?;
        let to_move = match tokens.next() {
            Some("r") => Player::Red,
            Some("b") => Player::Blue,
            Some(other) => return Err(malformed(format!("side to move must be r or b, got {other:?}"))),
            None => return Err(malformed("missing side to move")),
        };
        if let Some(extra) = tokens.next() {
            return Err(malformed(format!("unexpected trailing {extra:?}")));
        }
        GameState::new(deal, face_up, red, blue, to_move)
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.deal())?;
        if !self.is_fresh() {
            write!(f, " mask:{:04x}", self.face_up_mask())?;
        }
        let side = match self.to_move() {
            Player::Red => 'r',
            Player::Blue => 'b',
        };
        let (r, b) = (self.red(), self.blue());
        write!(f, " r({},{}) b({},{}) {side}", r.row, r.col, b.row, b.col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sample_deals() {
        let d: Deal = "A223/4A2J/3A23/J3A4".parse().unwrap();
        assert_eq!(d.card(Coord::new(0, 0)), Card::Ace);
        assert_eq!(d.card(Coord::new(1, 3)), Card::Joker);
        assert_eq!(d.card(Coord::new(3, 3)), Card::Four);
        assert_eq!(d.to_string(), "A223/4A2J/3A23/J3A4");
    }

    #[test]
    fn parses_state() {
        let s: GameState = "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r".parse().unwrap();
        assert_eq!(s.red(), Coord::new(0, 0));
        assert_eq!(s.blue(), Coord::new(1, 1));
        assert_eq!(s.to_move(), Player::Red);
        assert!(s.is_fresh());
        assert_eq!(s.to_string(), "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r");
    }

    #[test]
    fn masked_state_round_trip() {
        let text = "JA2A/3JA4/2323/34A2 mask:fffe r(0,1) b(1,1) b";
        let s: GameState = text.parse().unwrap();
        assert_eq!(s.face_up_count(), 15);
        assert_eq!(s.to_string(), text);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(
            "AA23/4A2J/3A23/J3A4".parse::<Deal>(),
            Err(Error::CardCount {
                card: Card::Ace,
                found: 5,
                ..
            })
        ));
        assert!(matches!("A223/4A2J/3A23".parse::<Deal>(), Err(Error::Malformed(_))));
        assert!(matches!(
            "A223/4A2J/3A23/J3AX".parse::<Deal>(),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            "JA2A/3JA4/2323/34A2 mask:fffe r(0,0) b(1,1) b".parse::<GameState>(),
            Err(Error::PawnOnFaceDown(Player::Red))
        ));
        assert!(matches!(
            "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) b".parse::<GameState>(),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            "JA2A/3JA4/2323/34A2 r(0,0) b(4,1) r".parse::<GameState>(),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            "JA2A/3JA4/2323/34A2 r(0,0) b(1,1) r extra".parse::<GameState>(),
            Err(Error::Malformed(_))
        ));
    }
}
