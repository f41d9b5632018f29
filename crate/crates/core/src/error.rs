use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error("invalid complex: {0}")]
    Complex(String),
    #[error("resolution: {0}")]
    Resolution(String),
    #[error("hypothesis not certified: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
