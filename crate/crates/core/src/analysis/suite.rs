//! The replication suite: ten G(n, p) and ten preferential-attachment
//! networks on 3000 nodes with average degrees 20, 40, ..., 200, each run
//! under every suite response function.

use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::drf::{standard_instances, DisparityResponse};
use crate::engine::{run, SimConfig, Trajectory};
use crate::graph::{Graph, GraphSpec, NetworkFamily};
use crate::rng::{derive_seed, STREAM_BA, STREAM_ER};

pub const SUITE_NODES: usize = 3000;
pub const SUITE_NETWORKS_PER_FAMILY: usize = 10;

/// Negative-step thresholds run in the suite in addition to the standard
/// grid, because the grid's 0.105 spacing skips them.
pub const ANCHOR_THRESHOLDS: [f64; 4] = [1.0, 1.5, 2.0, 2.5];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteNetwork {
    /// Stable identifier such as `er-020` or `ba-140`.
    pub label: String,
    pub spec: GraphSpec,
}

/// Average degrees 20, 40, ..., 200.
pub fn suite_avg_degrees() -> Vec<f64> {
    (1..=SUITE_NETWORKS_PER_FAMILY).map(|i| 20.0 * i as f64).collect()
}

fn family_networks(master_seed: u64, stream: u64, tag: &str, make: fn(usize, f64, u64) -> GraphSpec) -> Vec<SuiteNetwork> {
    suite_avg_degrees()
        .into_iter()
        .enumerate()
        .map(|(i, d)| SuiteNetwork {
            label: format!("{tag}-{:03}", d as u32),
            spec: make(SUITE_NODES, d, derive_seed(master_seed, &[stream, i as u64])),
        })
        .collect()
}

pub fn erdos_renyi_networks(master_seed: u64) -> Vec<SuiteNetwork> {
    family_networks(master_seed, STREAM_ER, "er", GraphSpec::erdos_renyi)
}

pub fn barabasi_albert_networks(master_seed: u64) -> Vec<SuiteNetwork> {
    family_networks(master_seed, STREAM_BA, "ba", GraphSpec::barabasi_albert)
}

/// All twenty suite networks, G(n, p) first.
pub fn suite_networks(master_seed: u64) -> Vec<SuiteNetwork> {
    let mut v = erdos_renyi_networks(master_seed);
    v.extend(barabasi_albert_networks(master_seed));
    v
}

/// Standard instances plus any anchor threshold not already on the grid.
pub fn suite_instances() -> Vec<DisparityResponse> {
    let mut v = standard_instances();
    for k in ANCHOR_THRESHOLDS {
        let d = DisparityResponse::NegativeStep { threshold: k };
        if !v.contains(&d) {
            v.push(d);
        }
    }
    v
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub network: usize,
    pub drf: DisparityResponse,
    pub trajectory: Trajectory,
}

/// Builds every network in parallel.
pub fn build_networks(networks: &[SuiteNetwork]) -> Result<Vec<Graph>, AnalysisError> {
    networks
        .par_iter()
        .map(|n| n.spec.build().map_err(AnalysisError::from))
        .collect()
}

/// Runs every (network, response function) pair. Output order is network
/// major, response-function minor, independent of the worker count.
pub fn run_suite(
    graphs: &[Graph],
    drfs: &[DisparityResponse],
    base: &SimConfig,
) -> Result<Vec<SuiteRun>, AnalysisError> {
    base.validate()?;
    Ok((0..graphs.len() * drfs.len())
        .into_par_iter()
        .map(|job| {
            let (network, k) = (job / drfs.len(), job % drfs.len());
            let cfg = SimConfig { drf: drfs[k], ..base.clone() };
            SuiteRun { network, drf: drfs[k], trajectory: run(&graphs[network], &cfg) }
        })
        .collect())
}

pub fn family_tag(family: &NetworkFamily) -> &'static str {
    match family {
        NetworkFamily::ErdosRenyi => "er",
        NetworkFamily::BarabasiAlbert => "ba",
        NetworkFamily::ErdosRenyiWithAuxiliary => "er-aux",
        NetworkFamily::Florentine => "ffn",
        NetworkFamily::EdgeListFile(_) => "file",
    }
}
