use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};
use fit_core::analysis::suite::SuiteNetwork;
use fit_core::{GraphSpec, SimConfig};
use serde::Serialize;

use crate::format::CSV_SCHEMA_VERSION;
use crate::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct DerivedSeed {
    pub label: String,
    pub seed: u64,
}

/// Sweep grid axes as run.
#[derive(Debug, Clone, Serialize)]
pub struct SweepAxes {
    pub disparity_thresholds: Vec<f64>,
    pub activity_thresholds: Vec<f64>,
    pub realizations: usize,
}

/// Everything needed to reproduce one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub csv_schema_version: u32,
    pub command: &'static str,
    pub master_seed: u64,
    pub derived_seeds: Vec<DerivedSeed>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub networks: Vec<SuiteNetwork>,
    /// Step budget, tolerance and thresholds. For the suite and sweeps the
    /// response function here is a placeholder; see `drfs`.
    pub sim: SimConfig,
    pub drfs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepAxes>,
    pub workers: usize,
    pub terminal_step_convention: &'static str,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<String>,
}

pub const TERMINAL_STEP_CONVENTION: &str =
    "last step with a positive rate; nodes still sharing carry the run's final step index";

impl RunManifest {
    pub fn new(command: &'static str, master_seed: u64, sim: SimConfig, started: DateTime<Utc>) -> Self {
        Self {
            tool: "fit",
            version: env!("CARGO_PKG_VERSION"),
            csv_schema_version: CSV_SCHEMA_VERSION,
            command,
            master_seed,
            derived_seeds: Vec::new(),
            graph: None,
            networks: Vec::new(),
            drfs: vec![sim.drf.to_string()],
            sim,
            sweep: None,
            workers: rayon::current_num_threads(),
            terminal_step_convention: TERMINAL_STEP_CONVENTION,
            started_at: timestamp(started),
            finished_at: String::new(),
            outputs: Vec::new(),
        }
    }

    /// Stamps the finish time and writes `manifest.json` into `dir`.
    pub fn finish(mut self, dir: &Path) -> Result<Self, CliError> {
        self.finished_at = timestamp(Utc::now());
        self.outputs.push(MANIFEST_FILE.into());
        let text = serde_json::to_string_pretty(&self)?;
        crate::commands::write_file(&dir.join(MANIFEST_FILE), &text)?;
        Ok(self)
    }
}

fn timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}
