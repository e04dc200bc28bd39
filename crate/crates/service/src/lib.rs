//! HTTP game service: create games, play moves, ask the engine to move and
//! request a perfect-play analysis of the current position.

mod error;
mod session;

pub use error::{ErrorBody, ServiceError};
pub use session::{
    analyse, Analysis, CellView, CreateGame, GameSession, GameView, MoveEvaluation, MoveRequest, Overall, SessionStore,
    DEFAULT_CAPACITY,
};

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use tower_http::cors::CorsLayer;

type Shared = Arc<SessionStore>;

/// Empty bodies decode as `T::default()`.
fn parse_body<T: DeserializeOwned + Default>(body: &Bytes) -> Result<T, ServiceError> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(T::default());
    }
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

/// Runs solver-bound work off the async executor.
async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ServiceError> + Send + 'static,
) -> Result<T, ServiceError> {
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| std::panic::resume_unwind(e.into_panic()))
}

async fn create_game(State(store): State<Shared>, body: Bytes) -> Result<impl IntoResponse, ServiceError> {
    let req: CreateGame = parse_body(&body)?;
    Ok((StatusCode::CREATED, Json(store.create_game(&req)?)))
}

async fn get_game(State(store): State<Shared>, Path(id): Path<String>) -> Result<Json<GameView>, ServiceError> {
    Ok(Json(store.get(&id)?))
}

async fn play_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<GameView>, ServiceError> {
    let req: MoveRequest = serde_json::from_slice(&body).map_err(|e| ServiceError::BadRequest(e.to_string()))?;
    Ok(Json(store.play_move(&id, &req)?))
}

async fn engine_move(State(store): State<Shared>, Path(id): Path<String>) -> Result<Json<GameView>, ServiceError> {
    Ok(Json(blocking(move || store.engine_move(&id)).await?))
}

async fn undo(State(store): State<Shared>, Path(id): Path<String>) -> Result<Json<GameView>, ServiceError> {
    Ok(Json(store.undo(&id)?))
}

async fn analysis(State(store): State<Shared>, Path(id): Path<String>) -> Result<Json<Analysis>, ServiceError> {
    Ok(Json(blocking(move || store.analysis(&id)).await?))
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(play_move))
        .route("/games/{id}/engine-move", post(engine_move))
        .route("/games/{id}/undo", post(undo))
        .route("/games/{id}/analysis", get(analysis))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

/// Serves the API on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionStore::default()))).await
}
