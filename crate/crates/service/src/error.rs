use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use collapsi::Coord;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ServiceError {
    #[error("no game with id {0}")]
    NotFound(String),
    #[error("invalid deal: {0}")]
    InvalidDeal(String),
    #[error("illegal move to {dest}")]
    IllegalMove {
        dest: Coord,
        legal_destinations: Vec<Coord>,
    },
    #[error("the game is over")]
    GameOver,
    #[error("no move to undo")]
    NothingToUndo,
    #[error("bad request: {0}")]
    BadRequest(String),
}

/// Error payload sent to clients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legal_destinations: Option<Vec<Coord>>,
}

impl ServiceError {
    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::InvalidDeal(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::IllegalMove { .. } | ServiceError::GameOver | ServiceError::NothingToUndo => {
                StatusCode::CONFLICT
            }
            ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::NotFound(_) => "not_found",
            ServiceError::InvalidDeal(_) => "invalid_deal",
            ServiceError::IllegalMove { .. } => "illegal_move",
            ServiceError::GameOver => "game_over",
            ServiceError::NothingToUndo => "nothing_to_undo",
            ServiceError::BadRequest(_) => "bad_request",
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            code: self.code().into(),
            message: self.to_string(),
            legal_destinations: match self {
                ServiceError::IllegalMove { legal_destinations, .. } => Some(legal_destinations.clone()),
                _ => None,
            },
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        (self.status(), Json(self.body())).into_response()
    }
}
