//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by series construction, ingestion and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("empty input: no data rows")]
    EmptyInput,

    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("negative count at line {line}: {value}")]
    NegativeCount { line: usize, value: f64 },

    #[error(
        "gap in monthly coverage before line {line} ({missing} missing month(s)); \
             re-run with zero-fill to accept gaps"
    )]
    MonthGap { line: usize, missing: usize },

    #[error("series too short: need at least {needed}, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("zero variance: {context}")]
    ZeroVariance { context: String },

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("date {date} outside aggregation range")]
    DateOutOfRange { date: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
