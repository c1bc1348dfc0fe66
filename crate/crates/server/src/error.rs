use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

use semprobe_core::context::ContextError;
use semprobe_core::lattice::LatticeError;
use semprobe_core::probe::ProbeError;

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    NotFound(String),
    #[error("revision conflict: expected {expected}, current is {current}")]
    Conflict { expected: u64, current: u64 },
    #[error("{0}")]
    TooLarge(String),
    #[error("{0}")]
    Unprocessable(String),
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Conflict { .. } => StatusCode::CONFLICT,
            ApiError::TooLarge(_) => StatusCode::PAYLOAD_TOO_LARGE,
            ApiError::Unprocessable(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = match &self {
            ApiError::Conflict { current, .. } => json!({ "error": self.to_string(), "revision": current }),
            _ => json!({ "error": self.to_string() }),
        };
        (self.status(), Json(body)).into_response()
    }
}

impl From<ContextError> for ApiError {
    fn from(e: ContextError) -> Self {
        ApiError::BadRequest(e.to_string())
    }
}

impl From<LatticeError> for ApiError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overflow { .. } => ApiError::Unprocessable(e.to_string()),
            _ => ApiError::Internal(e.to_string()),
        }
    }
}

impl From<ProbeError> for ApiError {
    fn from(e: ProbeError) -> Self {
        match e {
            ProbeError::UnknownObject(_)
            | ProbeError::NotLoaded(_)
            | ProbeError::UnknownGroup(_)
            | ProbeError::NotVisible(_) => ApiError::NotFound(e.to_string()),
            ProbeError::EmptyProbe | ProbeError::InvalidWeight(_) | ProbeError::InvalidArgument(_) => {
                ApiError::BadRequest(e.to_string())
            }
        }
    }
}
