//! HTTP review service over a [`ReviewSession`].
//!
//! Readers share the session; mutations take the write lock, so they are
//! applied one at a time. Accepted edits are appended to the edit log before
//! the response is sent.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anea_core::review::{CategoryView, Edit, Mutation, ReviewError, ReviewExport, ReviewSession};
use anyhow::{Context, Result};
use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::sync::RwLock;

pub const PROTOCOL_VERSION: &str = "v1";

pub struct AppState {
    session: ReviewSession,
    log: Option<File>,
}

pub type Shared = Arc<RwLock<AppState>>;

impl AppState {
    /// Wraps `session`; if `log` is given, its existing edits are replayed
    /// first and new edits are appended to it.
    pub fn new(mut session: ReviewSession, log: Option<&Path>) -> Result<Self> {
        let log = match log {
            None => None,
            Some(path) => {
                if path.exists() {
                    let reader = BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?);
                    for (i, line) in reader.lines().enumerate() {
                        let line = line?;
                        if line.trim().is_empty() {
                            continue;
                        }
                        let edit: Edit = serde_json::from_str(&line)
                            .with_context(|| format!("{}:{}: malformed edit", path.display(), i + 1))?;
                        session
                            .apply(edit)
                            .map_err(anea_core::Error::from)
                            .with_context(|| format!("{}:{}: edit does not replay", path.display(), i + 1))?;
                    }
                }
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .with_context(|| format!("opening {}", path.display()))?;
                Some(file)
            }
        };
        Ok(AppState { session, log })
    }

    pub fn session(&self) -> &ReviewSession {
        &self.session
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

pub struct ApiError(StatusCode, String);

impl From<ReviewError> for ApiError {
    fn from(e: ReviewError) -> Self {
        let status = match e {
            ReviewError::UnknownCategory(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(e.status(), e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { error: self.1 })).into_response()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CategoriesBody {
    pub categories: Vec<CategoryView>,
    pub state_hash: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UnassignedBody {
    pub terms: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HashBody {
    pub state_hash: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveBody {
    pub term: String,
    pub from: u32,
    pub to: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RenameBody {
    pub category: u32,
    pub label: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AssignBody {
    pub term: String,
    pub to: u32,
}

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/v1/categories", get(list_categories))
        .route("/v1/categories/{id}", get(get_category))
        .route("/v1/unassigned", get(list_unassigned))
        .route("/v1/state-hash", get(state_hash))
        .route("/v1/export", get(export))
        .route("/v1/move", post(move_term))
        .route("/v1/rename", post(rename))
        .route("/v1/assign", post(assign))
        .with_state(state)
}

async fn list_categories(State(state): State<Shared>) -> Json<CategoriesBody> {
    let s = state.read().await;
    Json(CategoriesBody {
        categories: s.session.state().categories(),
        state_hash: s.session.state_hash(),
    })
}

async fn get_category(State(state): State<Shared>, UrlPath(id): UrlPath<u32>) -> Result<Json<CategoryView>, ApiError> {
    let s = state.read().await;
    Ok(Json(s.session.state().category(id)?))
}

async fn list_unassigned(State(state): State<Shared>) -> Json<UnassignedBody> {
    let s = state.read().await;
    Json(UnassignedBody {
        terms: s.session.state().unassigned(),
    })
}

async fn state_hash(State(state): State<Shared>) -> Json<HashBody> {
    Json(HashBody {
        state_hash: state.read().await.session.state_hash(),
    })
}

async fn export(State(state): State<Shared>) -> Json<ReviewExport> {
    Json(state.read().await.session.export())
}

async fn mutate(state: &Shared, edit: Edit) -> Result<Json<Mutation>, ApiError> {
    let mut s = state.write().await;
    let mutation = s.session.apply(edit)?;
    if let Some(log) = s.log.as_mut() {
        let line = serde_json::to_string(&mutation.edit).expect("edit serializes");
        if let Err(e) = writeln!(log, "{line}").and_then(|_| log.flush()) {
            log::error!("edit log write failed: {e}");
            return Err(ApiError(StatusCode::INTERNAL_SERVER_ERROR, format!("edit log: {e}")));
        }
    }
    Ok(Json(mutation))
}

async fn move_term(
    State(state): State<Shared>,
    body: Result<Json<MoveBody>, JsonRejection>,
) -> Result<Json<Mutation>, ApiError> {
    let Json(b) = body?;
    mutate(
        &state,
        Edit::Move {
            term: b.term,
            from: b.from,
            to: b.to,
        },
    )
    .await
}

async fn rename(
    State(state): State<Shared>,
    body: Result<Json<RenameBody>, JsonRejection>,
) -> Result<Json<Mutation>, ApiError> {
    let Json(b) = body?;
    mutate(
        &state,
        Edit::Rename {
            category: b.category,
            label: b.label,
        },
    )
    .await
}

async fn assign(
    State(state): State<Shared>,
    body: Result<Json<AssignBody>, JsonRejection>,
) -> Result<Json<Mutation>, ApiError> {
    let Json(b) = body?;
    mutate(&state, Edit::Assign { term: b.term, to: b.to }).await
}

pub struct ServeArgs {
    pub state: PathBuf,
    pub kb: PathBuf,
    pub vectors: PathBuf,
    pub port: u16,
    pub log: Option<PathBuf>,
}

pub async fn serve(args: ServeArgs) -> Result<()> {
    let file = anea_core::CategoriesFile::read(&args.state).map_err(anea_core::Error::from)?;
    let kb = crate::commands::load_kb(&args.kb)?;
    let store = crate::commands::load_vectors(&args.vectors)?;
    let vectors = Arc::new(anea_core::embeddings::OwnedVectorizer { store, kb });
    let session = ReviewSession::new(file, vectors);
    let state = Arc::new(RwLock::new(AppState::new(session, args.log.as_deref())?));
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", args.port))
        .await
        .with_context(|| format!("binding port {}", args.port))?;
    log::info!("review service listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
