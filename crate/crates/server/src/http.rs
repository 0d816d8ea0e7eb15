//! JSON API: `POST /annotate`, `GET /domains`, `GET /examples`.
//!
//! A successful `/annotate` body is byte-identical to the CLI's JSON output for
//! the same input. Errors are `{"version", "error": {"kind", "message", ...}}`.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use serde_json::{json, Value};
use tempevent_core::format::to_json;
use tempevent_core::registry::NEWS;
use tempevent_core::{annotate, AnnotateOptions, BackendRegistry, Error, SCHEMA_VERSION};

use crate::examples;

#[derive(Debug, Clone)]
pub struct AppState {
    pub registry: Arc<BackendRegistry>,
    pub max_text_chars: usize,
}

impl AppState {
    pub fn new(registry: BackendRegistry, max_text_chars: usize) -> Self {
        Self {
            registry: Arc::new(registry),
            max_text_chars,
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/annotate", post(annotate_handler))
        .route("/domains", get(domains_handler))
        .route("/examples", get(examples_handler))
        .with_state(state)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnotateRequest {
    text: String,
    #[serde(default = "default_domain")]
    domain: String,
    #[serde(default)]
    options: AnnotateOptions,
}

fn default_domain() -> String {
    NEWS.to_string()
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, kind: &str, message: impl Into<String>) -> Self {
        Self {
            status,
            body: json!({ "kind": kind, "message": message.into() }),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.body[key] = value;
        self
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match &e {
            Error::UnknownDomain { available, .. } => {
                ApiError::new(StatusCode::BAD_REQUEST, "unknown_domain", e.to_string()).with("domains", json!(available))
            }
            Error::InvalidOption(_) => ApiError::new(StatusCode::BAD_REQUEST, "invalid_option", e.to_string()),
            Error::Stage { stage, .. } => {
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "pipeline", e.to_string()).with("stage", json!(stage.name()))
            }
            _ => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "version": SCHEMA_VERSION, "error": self.body });
        (self.status, axum::Json(body)).into_response()
    }
}

async fn annotate_handler(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: AnnotateRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "bad_request", format!("malformed request: {e}")))?;
    let chars = req.text.chars().count();
    if chars > state.max_text_chars {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "too_large",
            format!("text has {chars} characters; the limit is {}", state.max_text_chars),
        ));
    }
    let registry = state.registry.clone();
    let result = tokio::task::spawn_blocking(move || annotate(&req.text, &req.domain, &registry, &req.options))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?;
    match result {
        Ok(r) => Ok(([(header::CONTENT_TYPE, "application/json")], to_json(&r)).into_response()),
        Err(e) => {
            if e.stage().is_some() {
                tracing::error!(error = %e, "annotation failed");
            }
            Err(e.into())
        }
    }
}

async fn domains_handler(State(state): State<AppState>) -> axum::Json<Value> {
    axum::Json(json!({ "version": SCHEMA_VERSION, "domains": state.registry.domains() }))
}

#[derive(Debug, Deserialize)]
struct ExamplesQuery {
    domain: Option<String>,
}

async fn examples_handler(
    State(state): State<AppState>,
    Query(q): Query<ExamplesQuery>,
) -> Result<axum::Json<Value>, ApiError> {
    let domain = q.domain.unwrap_or_else(default_domain);
    state.registry.get(&domain)?;
    Ok(axum::Json(json!({
        "version": SCHEMA_VERSION,
        "domain": domain,
        "examples": examples::for_domain(&domain),
    })))
}
