use serde::Serialize;

use super::AnalysisError;
use crate::engine::Trajectory;
use crate::numeric;

const SERIES_TOLERANCE: f64 = 1e-12;

/// Network-wide versus surviving-cohort disparity over a run.
///
/// The cohort is the set of nodes still sharing at the terminal step. A
/// falling network average alongside a flat or rising cohort average means
/// the decline comes from high-disparity sharers leaving, not from anyone's
/// disparity improving.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivorBiasReport {
    pub network_mean_disparity: Vec<Option<f64>>,
    pub cohort_mean_disparity: Vec<Option<f64>>,
    pub cohort_size: usize,
    /// Network series is non-increasing from step 1 on.
    pub network_declining: bool,
    /// Cohort series is non-decreasing over the whole run.
    pub cohort_non_decreasing: bool,
}

fn monotone(series: &[Option<f64>], from: usize, increasing: bool) -> bool {
    let defined: Vec<f64> = series.iter().skip(from).flatten().copied().collect();
    defined.windows(2).all(|w| {
        if increasing {
            w[1] >= w[0] - SERIES_TOLERANCE
        } else {
            w[1] <= w[0] + SERIES_TOLERANCE
        }
    })
}

/// Needs a trajectory recorded with `record_node_level`.
pub fn survivor_bias_check(traj: &Trajectory) -> Result<SurvivorBiasReport, AnalysisError> {
    let history = traj.node_history.as_ref().ok_or(AnalysisError::NodeHistoryMissing)?;
    let final_rates = &traj.final_state.rates;
    let cohort: Vec<usize> = (0..final_rates.len()).filter(|&u| final_rates[u] > 0.0).collect();

    let network_mean_disparity: Vec<Option<f64>> =
        traj.metrics.iter().map(|m| m.mean_disparity).collect();
    let cohort_mean_disparity: Vec<Option<f64>> = history
        .disparity
        .iter()
        .map(|zs| numeric::mean(cohort.iter().filter_map(|&u| zs[u])))
        .collect();

    Ok(SurvivorBiasReport {
        network_declining: monotone(&network_mean_disparity, 1, false),
        cohort_non_decreasing: monotone(&cohort_mean_disparity, 0, true),
        network_mean_disparity,
        cohort_mean_disparity,
        cohort_size: cohort.len(),
    })
}
