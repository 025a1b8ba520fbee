//! HTTP façade over the analyzer.
//!
//! `POST /api/analyze` takes `{gcode, machine, options}` and answers with the
//! report, the parse diagnostics and the sampled path geometry. Requests share
//! no state; identical requests produce identical responses, keyed by
//! `request_hash`.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderMap, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

use crate::analyzer::{analyze, AnalyzeOptions};
use crate::emit::{emit_json, SvgView};
use crate::gcode::{parse_program, ParseDiagnostic, Severity};
use crate::geometry::{sample_block, Point3};
use crate::kinematics::MachineConfig;

pub const MAX_BODY_BYTES: usize = 20 * 1024 * 1024;
/// Chord error of the sampled geometry returned for rendering, mm.
pub const SAMPLE_CHORD_TOL: f64 = 0.01;

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    pub gcode: String,
    pub machine: MachineConfig,
    #[serde(default)]
    pub options: RequestOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RequestOptions {
    #[serde(flatten)]
    pub analysis: AnalyzeOptions,
    #[serde(default)]
    pub view: SvgView,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledBlock {
    pub index: usize,
    pub rapid: bool,
    pub arc: bool,
    pub points: Vec<[f64; 3]>,
}

/// Error body: a message and, for invalid fields, the dotted field path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

struct ApiFailure(StatusCode, ApiError);

impl ApiFailure {
    fn new(status: StatusCode, error: impl Into<String>, field: Option<String>) -> Self {
        ApiFailure(status, ApiError { error: error.into(), field })
    }
}

impl IntoResponse for ApiFailure {
    fn into_response(self) -> Response {
        (self.0, Json(self.1)).into_response()
    }
}

struct AppState {
    started: Instant,
}

pub fn router(config: ServiceConfig) -> Router {
    let state = Arc::new(AppState { started: Instant::now() });
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::HEAD, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    let api = Router::new()
        .route("/api/analyze", post(analyze_handler))
        .route("/api/health", get(health_handler))
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
        .with_state(state);
    let app = match config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    app.layer(cors)
}

/// Serves on `listener` until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, config: ServiceConfig) -> std::io::Result<()> {
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn health_handler(State(state): State<Arc<AppState>>) -> Json<Value> {
    Json(json!({
        "status": "ok",
        "version": env!("CARGO_PKG_VERSION"),
        "uptime_s": state.started.elapsed().as_secs_f64(),
    }))
}

fn is_json(headers: &HeaderMap) -> bool {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.split(';').next())
        .is_some_and(|mime| {
            let mime = mime.trim().to_ascii_lowercase();
            mime == "application/json" || mime.ends_with("+json")
        })
}

fn decode(body: &[u8]) -> Result<AnalyzeRequest, ApiFailure> {
    let de = &mut serde_json::Deserializer::from_slice(body);
    let req: AnalyzeRequest = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            ApiFailure::new(StatusCode::UNPROCESSABLE_ENTITY, format!("field `{field}`: {inner}"), Some(field))
        } else {
            ApiFailure::new(StatusCode::BAD_REQUEST, format!("malformed JSON: {inner}"), None)
        }
    })?;
    if let Err(e) = req.machine.validate() {
        let field = format!("machine.{}", e.field);
        return Err(ApiFailure::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("field `{field}`: {}", e.message),
            Some(field),
        ));
    }
    if req.gcode.trim().is_empty() {
        return Err(ApiFailure::new(StatusCode::UNPROCESSABLE_ENTITY, "gcode must not be empty", Some("gcode".into())));
    }
    if let Err(e) = req.options.analysis.validate() {
        return Err(ApiFailure::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string(), Some("options".into())));
    }
    Ok(req)
}

/// SHA-256 of the canonical JSON form of the request.
pub fn request_hash(req: &AnalyzeRequest) -> String {
    let canonical = serde_json::to_vec(req).expect("requests always serialize");
    hex::encode(Sha256::digest(&canonical))
}

/// Builds the response body. Parse errors do not fail the request; the
/// report then covers the blocks that were accepted, or is `null`.
pub fn respond(req: &AnalyzeRequest) -> Value {
    let (path, diagnostics) = parse_program(&req.gcode, Point3::ORIGIN);
    let machine = req.machine.limits();
    let mut errors: Vec<String> = Vec::new();
    let report = if path.is_empty() {
        errors.push("no motion blocks".to_string());
        Value::Null
    } else {
        match analyze(&path, &machine, &req.options.analysis) {
            Ok(r) => serde_json::from_slice(&emit_json(&r)).expect("emitted report is valid JSON"),
            Err(e) => {
                errors.push(e.to_string());
                Value::Null
            }
        }
    };
    let geometry: Vec<SampledBlock> = path
        .blocks()
        .iter()
        .enumerate()
        .map(|(index, b)| SampledBlock {
            index,
            rapid: b.rapid,
            arc: b.is_arc(),
            points: sample_block(b, SAMPLE_CHORD_TOL).into_iter().map(Point3::to_array).collect(),
        })
        .collect();
    let parse_errors = diagnostics.iter().filter(|d| d.severity == Severity::Error).count();
    json!({
        "request_hash": request_hash(req),
        "view": req.options.view,
        "report": report,
        "diagnostics": diagnostics.iter().map(diagnostic_json).collect::<Vec<_>>(),
        "parse_errors": parse_errors,
        "errors": errors,
        "geometry": geometry,
    })
}

fn diagnostic_json(d: &ParseDiagnostic) -> Value {
    serde_json::to_value(d).expect("diagnostics always serialize")
}

async fn analyze_handler(headers: HeaderMap, body: Bytes) -> Result<Json<Value>, ApiFailure> {
    if !is_json(&headers) {
        return Err(ApiFailure::new(StatusCode::UNSUPPORTED_MEDIA_TYPE, "content type must be application/json", None));
    }
    let req = decode(&body)?;
    let value = tokio::task::spawn_blocking(move || respond(&req))
        .await
        .map_err(|e| ApiFailure::new(StatusCode::INTERNAL_SERVER_ERROR, format!("analysis failed: {e}"), None))?;
    Ok(Json(value))
}
