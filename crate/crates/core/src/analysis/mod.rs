//! Per-step aggregates, terminal statistics, sweeps and the replication suite.

pub mod metrics;
pub mod suite;
pub mod survivor;
pub mod sweep;
pub mod terminal;

pub use metrics::{step_metrics, StepMetrics};
pub use survivor::{survivor_bias_check, SurvivorBiasReport};
pub use sweep::{realization_seed, threshold_sweep, SweepCell, SweepGrid, DEFAULT_REALIZATIONS};
pub use terminal::{
    paradox_terminal_heatmap, paradox_terminal_pairs, pooled_terminal_correlation,
    terminal_correlation,
    ParadoxTerminalHeatmap, DEFAULT_BUCKET_WIDTH,
};

use thiserror::Error;

use crate::drf::DrfError;
use crate::engine::ConfigError;
use crate::graph::GraphError;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("trajectory was recorded without node-level history")]
    NodeHistoryMissing,
    #[error("sweep needs at least one realization")]
    NoRealizations,
    #[error("sweep grids must be non-empty")]
    EmptyGrid,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Drf(#[from] DrfError),
}
