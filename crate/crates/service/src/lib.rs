//! Stateless HTTP API over the spline library.
//!
//! | Method | Path                     | Response                          |
//! |--------|--------------------------|-----------------------------------|
//! | POST   | `/api/v1/spline`         | spline report, or 400 / 413 / 422 |
//! | GET    | `/api/v1/examples/{id}`  | built-in dataset, or 404          |
//! | GET    | `/api/v1/schema`         | JSON Schema of the request body   |
//! | GET    | `/healthz`               | `ok`                              |

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use bezier_spline::datasets;
use bezier_spline::io::{parse_value, ErrorCode, InputError, REQUEST_SCHEMA};
use bezier_spline::{evaluate, SplineError};
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

/// Environment variable naming the listen address.
pub const ADDR_VAR: &str = "BZSPLINE_ADDR";
/// Environment variable naming the allowed CORS origin, or `*`.
pub const CORS_VAR: &str = "BZSPLINE_CORS_ORIGIN";

pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";
pub const DEFAULT_CORS_ORIGIN: &str = "http://localhost:5173";

/// Request bodies above this many bytes are refused before parsing. Large
/// enough for the largest accepted document written out in full.
pub const BODY_LIMIT: usize = 64 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub addr: SocketAddr,
    pub cors_origin: String,
}

impl Config {
    /// Read the configuration from the environment, falling back to the
    /// defaults for unset variables.
    pub fn from_env() -> Result<Self, String> {
        let addr = std::env::var(ADDR_VAR).unwrap_or_else(|_| DEFAULT_ADDR.to_owned());
        let addr = addr
            .parse()
            .map_err(|e| format!("{ADDR_VAR}={addr:?}: {e}"))?;
        let cors_origin =
            std::env::var(CORS_VAR).unwrap_or_else(|_| DEFAULT_CORS_ORIGIN.to_owned());
        Ok(Self { addr, cors_origin })
    }
}

impl Default for Config {
    fn default() -> Self {
        Self {
            addr: DEFAULT_ADDR.parse().expect("valid default address"),
            cors_origin: DEFAULT_CORS_ORIGIN.to_owned(),
        }
    }
}

fn cors(origin: &str) -> Result<CorsLayer, String> {
    let allow = if origin == "*" {
        AllowOrigin::from(Any)
    } else {
        let value = HeaderValue::from_str(origin).map_err(|e| format!("{CORS_VAR}: {e}"))?;
        AllowOrigin::exact(value)
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods(Any)
        .allow_headers([header::CONTENT_TYPE]))
}

/// The application router.
pub fn router(config: &Config) -> Result<Router, String> {
    Ok(Router::new()
        .route("/healthz", get(healthz))
        .route("/api/v1/spline", post(spline))
        .route("/api/v1/examples/{id}", get(example))
        .route("/api/v1/schema", get(schema))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors(&config.cors_origin)?))
}

fn json_response(status: StatusCode, body: Vec<u8>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, kind: &str, violations: Value) -> Response {
    let body = json!({ "error": kind, "violations": violations });
    json_response(status, serde_json::to_vec(&body).expect("json"))
}

async fn healthz() -> &'static str {
    "ok"
}

async fn schema() -> Response {
    (
        [(header::CONTENT_TYPE, "application/schema+json")],
        REQUEST_SCHEMA,
    )
        .into_response()
}

async fn example(Path(id): Path<String>) -> Response {
    match id.parse().ok().and_then(datasets::example) {
        Some(data) => json_response(
            StatusCode::OK,
            serde_json::to_vec(&data).expect("datasets serialize"),
        ),
        None => error_response(
            StatusCode::NOT_FOUND,
            "not_found",
            json!([{ "path": "", "message": format!("no example {id:?}; use 1 or 2") }]),
        ),
    }
}

fn invalid(err: &InputError) -> Response {
    let violations = serde_json::to_value(&err.violations).expect("violations serialize");
    if err.has_code(ErrorCode::TooLarge) {
        error_response(StatusCode::PAYLOAD_TOO_LARGE, "too_large", violations)
    } else {
        error_response(StatusCode::UNPROCESSABLE_ENTITY, "validation", violations)
    }
}

fn unsolvable(err: &SplineError) -> Response {
    error_response(
        StatusCode::UNPROCESSABLE_ENTITY,
        "unsolvable",
        json!([{ "path": "", "message": err.to_string() }]),
    )
}

async fn spline(body: Bytes) -> Response {
    let value: Value = match serde_json::from_slice(&body) {
        Ok(v) => v,
        Err(e) => {
            return error_response(
                StatusCode::BAD_REQUEST,
                "malformed_json",
                json!([{
                    "code": "syntax",
                    "path": "",
                    "line": e.line(),
                    "column": e.column(),
                    "message": e.to_string(),
                }]),
            )
        }
    };
    let doc = match parse_value(&value, None) {
        Ok(doc) => doc,
        Err(e) => return invalid(&e),
    };
    let computed = tokio::task::spawn_blocking(move || {
        evaluate(&doc).map(|report| serde_json::to_vec(&report).expect("reports serialize"))
    })
    .await;
    match computed {
        Ok(Ok(body)) => json_response(StatusCode::OK, body),
        Ok(Err(e)) => unsolvable(&e),
        Err(e) => error_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            "internal",
            json!([{ "path": "", "message": e.to_string() }]),
        ),
    }
}
