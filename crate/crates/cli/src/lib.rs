//! Library side of the `fit` command: argument definitions, CSV rendering,
//! run manifests and the command implementations.

pub mod args;
pub mod commands;
pub mod format;
pub mod manifest;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Usage { message: String },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] fit_core::graph::GraphError),
    #[error(transparent)]
    Config(#[from] fit_core::engine::ConfigError),
    #[error(transparent)]
    Analysis(#[from] fit_core::analysis::AnalysisError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot encode manifest: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self::Usage { message: message.into() }
    }
}
