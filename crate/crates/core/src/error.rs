use thiserror::Error;

/// Coarse error category, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Validation,
    Generation,
    Io,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("edge split produced an empty {side} side; retry with a new seed")]
    EmptySplit { side: &'static str },

    #[error("budget {budget} exceeds vertex count {vertices}")]
    Budget { budget: usize, vertices: usize },

    #[error("problem size out of range: {0}")]
    Size(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("dead state: no vertex in the current set has an unused neighbour")]
    DeadState,

    #[error("dataset generation starved: class {class} unreachable after {attempts} attempts")]
    Generation { class: usize, attempts: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("pruning removed every vertex")]
    EmptyPrune,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse { .. } => ErrorCategory::Parse,
            Error::Validation(_)
            | Error::UnknownVertex(_)
            | Error::Budget { .. }
            | Error::Size(_)
            | Error::Domain(_)
            | Error::DimMismatch { .. }
            | Error::Config(_)
            | Error::EmptyPrune => ErrorCategory::Validation,
            Error::EmptySplit { .. } | Error::DeadState | Error::Generation { .. } => {
                ErrorCategory::Generation
            }
            Error::Io(_) | Error::Serde(_) => ErrorCategory::Io,
            Error::Internal(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
