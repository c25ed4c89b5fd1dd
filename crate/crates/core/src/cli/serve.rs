//! Local HTTP session over one geometry and its move history.
//!
//! Handlers copy the current state under the lock, do their work on that
//! snapshot with the lock released, and commit only if no other move landed
//! in between. A stale commit gets `409 Conflict`.

use std::sync::{Arc, Mutex};

use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{self, volume, Geometry};
use crate::mesh::export_mesh;
use crate::rewrite::{rewrite, semantic_check, Check, Move, MoveRecord, MoveScript, StepCheck};
use crate::verify::{verify_with, BuildOptions, LogicalMap, LogicalMapDoc};

#[derive(Debug, Clone)]
pub struct Session {
    name: String,
    opts: BuildOptions,
    current: Geometry,
    map: Option<LogicalMap>,
    history: Vec<(Geometry, MoveRecord)>,
    revision: u64,
}

impl Session {
    pub fn new(g: Geometry, name: impl Into<String>, opts: BuildOptions) -> Self {
        Session {
            name: name.into(),
            opts,
            current: g,
            map: None,
            history: Vec::new(),
            revision: 0,
        }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.current
    }

    pub fn script(&self) -> MoveScript {
        let mut s = MoveScript::new(self.name.clone());
        s.moves = self.history.iter().map(|(_, r)| r.clone()).collect();
        s
    }
}

type Shared = Arc<Mutex<Session>>;

struct ApiError(StatusCode, String);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Version { .. } => StatusCode::BAD_REQUEST,
            Error::ResourceCap { .. } | Error::Unsupported(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn snapshot(s: &Shared) -> Session {
    s.lock().expect("session lock").clone()
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, Error> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(ApiError::from)
}

fn stale(expected: u64, found: u64) -> ApiError {
    ApiError(
        StatusCode::CONFLICT,
        format!("session moved from revision {expected} to {found} during the request"),
    )
}

async fn get_geometry(State(s): State<Shared>) -> Response {
    let snap = snapshot(&s);
    (
        [(header::CONTENT_TYPE, "application/json"), (header::ETAG, &snap.revision.to_string())],
        geometry::to_string(&snap.current),
    )
        .into_response()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VolumeDoc {
    pub revision: u64,
    pub volume: u64,
    pub moves: usize,
}

async fn get_volume(State(s): State<Shared>) -> ApiResult<Json<VolumeDoc>> {
    let snap = snapshot(&s);
    Ok(Json(VolumeDoc {
        revision: snap.revision,
        volume: volume(&snap.current)?,
        moves: snap.history.len(),
    }))
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    #[serde(rename = "move")]
    pub mv: Move,
    #[serde(default)]
    pub annotation: String,
    #[serde(default)]
    pub check: Check,
    /// Revision the client last saw; the move is refused if it is stale.
    #[serde(default)]
    pub revision: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveResponse {
    pub revision: u64,
    pub volume_before: u64,
    pub volume_after: u64,
    pub check: StepCheck,
    pub moves: usize,
}

async fn post_move(State(s): State<Shared>, Json(req): Json<MoveRequest>) -> ApiResult<Json<MoveResponse>> {
    let snap = snapshot(&s);
    if let Some(r) = req.revision.filter(|&r| r != snap.revision) {
        return Err(stale(r, snap.revision));
    }
    let base = snap.revision;
    let mv = req.mv.clone();
    let check = req.check;
    let (next, map, before, after) = blocking(move || {
        let next = rewrite(&snap.current, &mv)?;
        let map = match check {
            Check::Structural => None,
            Check::Semantic => {
                let before = match snap.map {
                    Some(m) => m,
                    None => verify_with(&snap.current, snap.opts)?,
                };
                Some(semantic_check(&before, &next, &mv, snap.opts)?)
            }
        };
        let (before, after) = (volume(&snap.current)?, volume(&next)?);
        Ok((next, map, before, after))
    })
    .await?;

    let mut guard = s.lock().expect("session lock");
    if guard.revision != base {
        return Err(stale(base, guard.revision));
    }
    let previous = std::mem::replace(&mut guard.current, next);
    guard.history.push((previous, MoveRecord { mv: req.mv, annotation: req.annotation }));
    let checked = map.is_some();
    guard.map = map;
    guard.revision += 1;
    Ok(Json(MoveResponse {
        revision: guard.revision,
        volume_before: before,
        volume_after: after,
        check: if checked { StepCheck::Passed } else { StepCheck::Structural },
        moves: guard.history.len(),
    }))
}

async fn undo(State(s): State<Shared>) -> ApiResult<Json<VolumeDoc>> {
    let mut guard = s.lock().expect("session lock");
    let (previous, _) = guard
        .history
        .pop()
        .ok_or_else(|| ApiError(StatusCode::CONFLICT, "nothing to undo".into()))?;
    guard.current = previous;
    guard.map = None;
    guard.revision += 1;
    Ok(Json(VolumeDoc {
        revision: guard.revision,
        volume: volume(&guard.current)?,
        moves: guard.history.len(),
    }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub revision: u64,
    pub map: LogicalMapDoc,
}

async fn post_verify(State(s): State<Shared>) -> ApiResult<Json<VerifyDoc>> {
    let snap = snapshot(&s);
    let revision = snap.revision;
    let map = match snap.map {
        Some(m) => m,
        None => {
            let (g, opts) = (snap.current, snap.opts);
            let m = blocking(move || verify_with(&g, opts)).await?;
            let mut guard = s.lock().expect("session lock");
            if guard.revision == revision {
                guard.map = Some(m.clone());
            }
            m
        }
    };
    Ok(Json(VerifyDoc { revision, map: map.to_doc() }))
}

async fn get_mesh(State(s): State<Shared>) -> ApiResult<Response> {
    let snap = snapshot(&s);
    let mesh = export_mesh(&snap.current)?;
    Ok(([(header::CONTENT_TYPE, "model/obj")], mesh.to_obj()).into_response())
}

async fn get_script(State(s): State<Shared>) -> Response {
    let script = snapshot(&s).script();
    ([(header::CONTENT_TYPE, "application/json")], script.to_string()).into_response()
}

async fn list_moves() -> Json<Vec<&'static str>> {
    Json(Move::KINDS.to_vec())
}

pub fn router(session: Session) -> Router {
    Router::new()
        .route("/geometry", get(get_geometry))
        .route("/moves", get(list_moves).post(post_move))
        .route("/moves/undo", post(undo))
        .route("/volume", get(get_volume))
        .route("/verify", post(post_verify))
        .route("/mesh", get(get_mesh))
        .route("/script", get(get_script))
        .with_state(Arc::new(Mutex::new(session)))
}

/// Block serving `session` on localhost until the process is stopped.
pub fn serve(session: Session, port: u16) -> Result<(), Error> {
    let rt = tokio::runtime::Runtime::new().map_err(|e| Error::io("<runtime>", e))?;
    rt.block_on(async {
        let addr = std::net::SocketAddr::from(([127, 0, 0, 1], port));
        let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| Error::io(addr.to_string(), e))?;
        eprintln!("serving on http://{addr}");
        axum::serve(listener, router(session)).await.map_err(|e| Error::io(addr.to_string(), e))
    })
}
