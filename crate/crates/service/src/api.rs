use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use grabbing_core::InstanceDocument;
use serde::{Deserialize, Serialize};

use crate::session::{EngineRole, EvalView, Session, SessionError, View};
use crate::store::SessionStore;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateRequest {
    pub instance: InstanceDocument,
    #[serde(default)]
    pub engine_role: EngineRole,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateResponse {
    pub session_id: String,
    pub view: View,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub vertex: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EngineMoveResponse {
    pub view: View,
    pub evals: Vec<EvalView>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

/// Error returned by every endpoint as `{code, message}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::Instance(_)
            | SessionError::Disconnected
            | SessionError::IllegalMove(_) => StatusCode::BAD_REQUEST,
            SessionError::UnknownSession(_) => StatusCode::NOT_FOUND,
            SessionError::WrongTurn(_)
            | SessionError::NotEngineTurn(_)
            | SessionError::Finished
            | SessionError::EmptyHistory => StatusCode::CONFLICT,
        };
        ApiError {
            status,
            body: ErrorBody {
                code: e.code().to_string(),
                message: e.to_string(),
            },
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody {
                code: "bad_request".to_string(),
                message: e.body_text(),
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type Shared = Arc<SessionStore>;
type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(view))
        .route("/sessions/{id}/moves", post(human_move))
        .route("/sessions/{id}/engine-move", post(engine_move))
        .route("/sessions/{id}/evals", get(evals))
        .route("/sessions/{id}/undo", post(undo))
        .with_state(store)
}

/// Runs `f` on the locked session off the async workers, since engine
/// calls can search for a while.
async fn with_session<T, F>(store: &SessionStore, id: &str, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&mut Session) -> Result<T, SessionError> + Send + 'static,
{
    let session: Arc<Mutex<Session>> = store.get(id)?;
    tokio::task::spawn_blocking(move || {
        let mut s = session.lock().unwrap_or_else(|p| p.into_inner());
        f(&mut s)
    })
    .await
    .expect("session task panicked")
    .map_err(ApiError::from)
}

async fn create(
    State(store): State<Shared>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> ApiResult<CreateResponse> {
    let Json(req) = body?;
    let session = Session::new(&req.instance, req.engine_role)?;
    let view = session.view();
    let session_id = store.insert(session);
    Ok(Json(CreateResponse { session_id, view }))
}

async fn view(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<View> {
    with_session(&store, &id, |s| Ok(s.view())).await.map(Json)
}

async fn human_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<View> {
    let Json(req) = body?;
    with_session(&store, &id, move |s| {
        s.human_move(req.vertex)?;
        Ok(s.view())
    })
    .await
    .map(Json)
}

async fn engine_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
) -> ApiResult<EngineMoveResponse> {
    with_session(&store, &id, |s| {
        let evals = s.engine_move()?;
        let evals = s.eval_views(&evals);
        Ok(EngineMoveResponse {
            view: s.view(),
            evals,
        })
    })
    .await
    .map(Json)
}

async fn evals(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<Vec<EvalView>> {
    with_session(&store, &id, |s| s.evals()).await.map(Json)
}

async fn undo(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<View> {
    with_session(&store, &id, |s| {
        s.undo()?;
        Ok(s.view())
    })
    .await
    .map(Json)
}
