//! Local JSON service for the game board.

use crate::session::Session;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path as FsPath;
use std::sync::{Arc, Mutex};
use topogame_core::game::SolveOptions;
use topogame_core::spacegen::space_id;
use topogame_core::{space_from_json, Error, FiniteSpace, GameKind, InvariantReport, Move, Player};

pub struct AppState {
    options: SolveOptions,
    spaces: Mutex<HashMap<String, FiniteSpace>>,
    games: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    record: Option<Mutex<File>>,
}

impl AppState {
    pub fn new(options: SolveOptions, record: Option<&FsPath>) -> std::io::Result<Arc<Self>> {
        let record = match record {
            Some(p) => Some(Mutex::new(
                OpenOptions::new().create(true).append(true).open(p)?,
            )),
            None => None,
        };
        Ok(Arc::new(AppState {
            options,
            spaces: Mutex::default(),
            games: Mutex::default(),
            record,
        }))
    }

    fn record(&self, session: &Session) {
        if let Some(file) = &self.record {
            let line = serde_json::to_string(&session.transcript()).expect("transcripts serialize");
            let mut f = file.lock().unwrap();
            if let Err(e) = writeln!(f, "{line}") {
                eprintln!("topogame: could not append to the record file: {e}");
            }
        }
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/space", post(create_space))
        .route("/api/game", post(create_game))
        .route("/api/game/{id}", get(game_state))
        .route("/api/game/{id}/move", post(make_move))
        .with_state(state)
}

/// Binds `127.0.0.1:port` and serves until the process is stopped.
pub async fn serve(state: Arc<AppState>, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("topogame: listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn not_found(what: &str, id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: "not_found",
            message: format!("no {what} with id {id:?}"),
        }
    }

    fn bad_request(message: String) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: "bad_request",
            message,
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let (status, code) = match &e {
            Error::IllegalMove { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "illegal_move"),
            Error::WrongMover { .. } => (StatusCode::CONFLICT, "wrong_mover"),
            Error::ResourceCap { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "resource_cap"),
            Error::InvalidParams(m) if m.contains("game is over") => {
                (StatusCode::CONFLICT, "game_over")
            }
            _ => (StatusCode::BAD_REQUEST, "invalid"),
        };
        ApiError {
            status,
            code,
            message: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(json!({ "error": self.message, "code": self.code })),
        )
            .into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn parse<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, ApiError> {
    serde_json::from_str(body).map_err(|e| ApiError::bad_request(format!("malformed request: {e}")))
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        code: "internal",
        message: e.to_string(),
    })?
}

async fn create_space(State(state): State<Arc<AppState>>, body: String) -> ApiResult {
    blocking(move || {
        let space = space_from_json(&body)?;
        let id = space_id(&space);
        let invariants = InvariantReport::compute(&space);
        state.spaces.lock().unwrap().insert(id.clone(), space);
        Ok(Json(json!({ "space_id": id, "invariants": invariants })))
    })
    .await
}

#[derive(Deserialize)]
struct NewGame {
    space_id: String,
    kind: GameKind,
    horizon: usize,
    human: Player,
}

async fn create_game(State(state): State<Arc<AppState>>, body: String) -> ApiResult {
    let req: NewGame = parse(&body)?;
    let space = state
        .spaces
        .lock()
        .unwrap()
        .get(&req.space_id)
        .cloned()
        .ok_or_else(|| ApiError::not_found("space", &req.space_id))?;
    blocking(move || {
        let session = Session::new(space, req.kind, req.horizon, req.human, state.options)?;
        let view = session.state()?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        state
            .games
            .lock()
            .unwrap()
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(Json(
            json!({ "game_id": id, "position": view.position, "state": view }),
        ))
    })
    .await
}

fn session(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    state
        .games
        .lock()
        .unwrap()
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError::not_found("game", id))
}

async fn game_state(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let game = session(&state, &id)?;
    blocking(move || {
        let view = game.lock().unwrap().state()?;
        Ok(Json(serde_json::to_value(view).expect("state serializes")))
    })
    .await
}

#[derive(Deserialize)]
struct MoveRequest {
    #[serde(rename = "move")]
    mv: Move,
}

async fn make_move(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: String,
) -> ApiResult {
    let game = session(&state, &id)?;
    let req: MoveRequest = parse(&body)?;
    blocking(move || {
        let mut s = game.lock().unwrap();
        let outcome = s.apply(req.mv)?;
        if outcome.done {
            state.record(&s);
        }
        Ok(Json(
            serde_json::to_value(outcome).expect("outcomes serialize"),
        ))
    })
    .await
}
