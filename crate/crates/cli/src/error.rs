use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown problem `{id}` (available: {known})")]
    UnknownProblem { id: String, known: String },

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error(transparent)]
    Solver(#[from] fracjac::Error),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("JSON serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}
