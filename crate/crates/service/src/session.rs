//! In-memory game sessions and the operations the HTTP layer exposes.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, MutexGuard};

use collapsi::deals::{initial_state, random_deal};
use collapsi::solver::{solve_score, SolveResult};
use collapsi::{Card, Coord, Deal, GameState, Move, Player, Score};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ServiceError;

pub const DEFAULT_CAPACITY: usize = 1024;

#[derive(Debug, Clone)]
pub struct GameSession {
    pub id: String,
    pub seed: Option<u64>,
    start: GameState,
    /// Each ply as the position it was played from and the move.
    history: Vec<(GameState, Move)>,
    current: GameState,
}

impl GameSession {
    fn new(id: String, seed: Option<u64>, start: GameState) -> GameSession {
        GameSession {
            id,
            seed,
            start,
            history: Vec::new(),
            current: start,
        }
    }

    pub fn current(&self) -> &GameState {
        &self.current
    }

    pub fn history(&self) -> &[(GameState, Move)] {
        &self.history
    }

    fn push(&mut self, m: Move) -> Result<(), ServiceError> {
        let next = self
            .current
            .apply_move(&m)
            .map_err(|_| illegal(&self.current, m.dest))?;
        self.history.push((self.current, m));
        self.current = next;
        Ok(())
    }

    /// Rebuilds the current position from the start and the move list.
    pub fn replay(&self) -> GameState {
        self.history.iter().fold(self.start, |s, (_, m)| {
            s.apply_move(m).expect("history holds legal moves")
        })
    }
}

fn illegal(s: &GameState, dest: Coord) -> ServiceError {
    ServiceError::IllegalMove {
        dest,
        legal_destinations: s.legal_moves().into_iter().map(|m| m.dest).collect(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreateGame {
    #[serde(default)]
    pub deal: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A move request. The path is optional; without one the canonical witness
/// for the destination is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRequest {
    pub dest: Coord,
    #[serde(default)]
    pub path: Option<Vec<Coord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellView {
    pub row: u8,
    pub col: u8,
    pub card: String,
    pub face_up: bool,
    pub pawn: Option<Player>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameView {
    pub id: String,
    pub state: String,
    pub deal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cells: Vec<CellView>,
    pub red: Coord,
    pub blue: Coord,
    pub to_move: Player,
    pub face_up_count: u32,
    pub plies_played: u32,
    pub terminal: bool,
    /// Set once the game is over.
    pub winner: Option<Player>,
    pub legal_moves: Vec<Move>,
    pub history: Vec<Move>,
}

impl GameView {
    fn of(session: &GameSession) -> GameView {
        let s = &session.current;
        let terminal = s.is_terminal();
        GameView {
            id: session.id.clone(),
            state: s.to_string(),
            deal: s.deal().to_string(),
            seed: session.seed,
            cells: Coord::all()
                .map(|c| CellView {
                    row: c.row,
                    col: c.col,
                    card: card_label(s.deal().card(c)),
                    face_up: s.is_face_up(c),
                    pawn: [Player::Red, Player::Blue].into_iter().find(|&p| s.pawn(p) == c),
                })
                .collect(),
            red: s.red(),
            blue: s.blue(),
            to_move: s.to_move(),
            face_up_count: s.face_up_count(),
            plies_played: s.plies_played(),
            terminal,
            winner: terminal.then(|| s.to_move().opponent()),
            legal_moves: s.legal_moves(),
            history: session.history.iter().map(|(_, m)| m.clone()).collect(),
        }
    }
}

fn card_label(c: Card) -> String {
    c.symbol().to_string()
}

/// Evaluation of one candidate move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEvaluation {
    #[serde(rename = "move")]
    pub mv: Move,
    /// Perfect-play score of the position after the move.
    pub score: Score,
    pub mover_wins: bool,
    /// Total game length under perfect play, `16 - |score|`.
    pub plies_to_end: u32,
    pub best: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overall {
    pub score: Score,
    pub mover_wins: bool,
    pub plies_to_end: u32,
    /// Plies still to be played from here under perfect play.
    pub plies_remaining: u32,
    pub best_move: Option<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub id: String,
    pub state: String,
    pub to_move: Player,
    pub terminal: bool,
    pub overall: Overall,
    pub moves: Vec<MoveEvaluation>,
}

/// Perfect-play evaluation of every legal move of `s`.
pub fn analyse(id: &str, s: &GameState) -> Analysis {
    let mover = s.to_move();
    let root: SolveResult = solve_score(s);
    let moves = s
        .legal_moves()
        .into_iter()
        .map(|m| {
            let child = s.apply_move(&m).expect("listed moves are legal");
            let score = solve_score(&child).score;
            let best = root.best_move.as_ref().is_some_and(|b| b.dest == m.dest);
            MoveEvaluation {
                mv: m,
                score,
                mover_wins: score.is_win_for(mover),
                plies_to_end: score.plies_from_fresh(),
                best,
            }
        })
        .collect();
    Analysis {
        id: id.to_string(),
        state: s.to_string(),
        to_move: mover,
        terminal: root.best_move.is_none(),
        overall: Overall {
            score: root.score,
            mover_wins: root.score.is_win_for(mover),
            plies_to_end: root.score.plies_from_fresh(),
            plies_remaining: s.face_up_count() - root.score.face_up_at_end(),
            best_move: root.best_move,
        },
        moves,
    }
}

struct Sessions {
    by_id: HashMap<String, Arc<Mutex<GameSession>>>,
    /// Creation order, oldest first, for eviction.
    order: VecDeque<String>,
}

/// Thread-safe session registry. Requests on one session are serialised by
/// that session's lock; different sessions proceed in parallel.
pub struct SessionStore {
    sessions: Mutex<Sessions>,
    capacity: usize,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::with_capacity(DEFAULT_CAPACITY)
    }
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn with_capacity(capacity: usize) -> SessionStore {
        SessionStore {
            sessions: Mutex::new(Sessions {
                by_id: HashMap::new(),
                order: VecDeque::new(),
            }),
            capacity: capacity.max(1),
        }
    }

    pub fn len(&self) -> usize {
        lock(&self.sessions).by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ServiceError> {
        lock(&self.sessions)
            .by_id
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    /// Starts a game from the given deal, or from a random deal drawn with
    /// `seed` (itself random when absent).
    pub fn create_game(&self, req: &CreateGame) -> Result<GameView, ServiceError> {
        let (deal, seed) = match &req.deal {
            Some(text) => {
                let deal: Deal = text
                    .parse()
                    .map_err(|e: collapsi::engine::Error| ServiceError::InvalidDeal(e.to_string()))?;
                (deal, None)
            }
            None => {
                let seed = req.seed.unwrap_or_else(rand::random);
                (random_deal(&mut ChaCha8Rng::seed_from_u64(seed)), Some(seed))
            }
        };
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = GameSession::new(id.clone(), seed, initial_state(&deal));
        let view = GameView::of(&session);

        let mut sessions = lock(&self.sessions);
        while sessions.by_id.len() >= self.capacity {
            let Some(oldest) = sessions.order.pop_front() else {
                break;
            };
            sessions.by_id.remove(&oldest);
        }
        sessions.by_id.insert(id.clone(), Arc::new(Mutex::new(session)));
        sessions.order.push_back(id);
        Ok(view)
    }

    pub fn get(&self, id: &str) -> Result<GameView, ServiceError> {
        let session = self.session(id)?;
        let guard = lock(&session);
        Ok(GameView::of(&guard))
    }

    pub fn play_move(&self, id: &str, req: &MoveRequest) -> Result<GameView, ServiceError> {
        let session = self.session(id)?;
        let mut guard = lock(&session);
        let current = guard.current;
        let m = match &req.path {
            Some(path) => Move {
                dest: req.dest,
                path: path.clone(),
            },
            None => current
                .witness_move(req.dest)
                .ok_or_else(|| illegal(&current, req.dest))?,
        };
        guard.push(m)?;
        Ok(GameView::of(&guard))
    }

    /// Plays the solver's best move for the side to move.
    pub fn engine_move(&self, id: &str) -> Result<GameView, ServiceError> {
        let session = self.session(id)?;
        let mut guard = lock(&session);
        let best = solve_score(&guard.current).best_move.ok_or(ServiceError::GameOver)?;
        guard.push(best)?;
        Ok(GameView::of(&guard))
    }

    pub fn undo(&self, id: &str) -> Result<GameView, ServiceError> {
        let session = self.session(id)?;
        let mut guard = lock(&session);
        let (previous, _) = guard.history.pop().ok_or(ServiceError::NothingToUndo)?;
        guard.current = previous;
        Ok(GameView::of(&guard))
    }

    /// Read-only: evaluates the current position without touching the
    /// session.
    pub fn analysis(&self, id: &str) -> Result<Analysis, ServiceError> {
        let session = self.session(id)?;
        let guard = lock(&session);
        Ok(analyse(&guard.id, &guard.current))
    }

    /// Snapshot of a session, mainly for tests.
    pub fn snapshot(&self, id: &str) -> Result<GameSession, ServiceError> {
        let session = self.session(id)?;
        let guard = lock(&session);
        Ok(guard.clone())
    }
}
