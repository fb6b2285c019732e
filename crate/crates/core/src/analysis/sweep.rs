use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::drf::DisparityResponse;
use crate::engine::{run, SimConfig};
use crate::graph::{Graph, GraphSpec};
use crate::numeric;
use crate::rng::{derive_seed, STREAM_REALIZATION};

/// Default number of graph realizations per sweep cell.
pub const DEFAULT_REALIZATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub disparity_threshold: f64,
    pub activity_threshold: f64,
    pub mean_terminal_fraction: f64,
    /// Sample standard deviation across realizations (0 for one realization).
    pub std: f64,
    /// Terminal sharer fraction of each realization, in realization order.
    pub fractions: Vec<f64>,
}

/// Terminal sharer fractions over a disparity-threshold by
/// activity-threshold grid. Cells are stored row-major with the disparity
/// threshold as the outer axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub disparity_thresholds: Vec<f64>,
    pub activity_thresholds: Vec<f64>,
    pub realizations: usize,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, zi: usize, ai: usize) -> &SweepCell {
        &self.cells[zi * self.activity_thresholds.len() + ai]
    }

    /// Cell with exactly these thresholds, if present.
    pub fn find(&self, z: f64, a: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.disparity_threshold == z && c.activity_threshold == a)
    }
}

/// Graph seed of realization `i` under master seed `master`.
pub fn realization_seed(master: u64, i: usize) -> u64 {
    derive_seed(master, &[STREAM_REALIZATION, i as u64])
}

/// Runs a negative-step disparity threshold `z*` with activity threshold
/// `a*` for every grid cell on `realizations` graphs drawn from `spec`.
///
/// Realization `i` uses the graph seeded with
/// [`realization_seed`]`(spec.seed, i)` in every cell, so cells differ only
/// in their thresholds. `cfg` supplies the step budget and convergence
/// tolerance; its response function and activity threshold are replaced per
/// cell. Work runs on the current rayon pool; results do not depend on the
/// number of workers.
pub fn threshold_sweep(
    spec: &GraphSpec,
    z_grid: &[f64],
    a_grid: &[f64],
    realizations: usize,
    cfg: &SimConfig,
) -> Result<SweepGrid, AnalysisError> {
    if realizations == 0 {
        return Err(AnalysisError::NoRealizations);
    }
    if z_grid.is_empty() || a_grid.is_empty() {
        return Err(AnalysisError::EmptyGrid);
    }
    let configs: Vec<SimConfig> = z_grid
        .iter()
        .flat_map(|&z| a_grid.iter().map(move |&a| (z, a)))
        .map(|(z, a)| {
            let mut c = cfg.clone().with_activity_threshold(a);
            c.drf = DisparityResponse::negative_step(z)?;
            c.record_node_level = false;
            c.validate()?;
            Ok(c)
        })
        .collect::<Result<_, AnalysisError>>()?;

    let graphs: Vec<Graph> = (0..realizations)
        .into_par_iter()
        .map(|i| spec.with_seed(realization_seed(spec.seed, i)).build())
        .collect::<Result<_, _>>()?;

    let fractions: Vec<f64> = (0..configs.len() * realizations)
        .into_par_iter()
        .map(|job| {
            let (cell, i) = (job / realizations, job % realizations);
            run(&graphs[i], &configs[cell]).terminal_sharer_fraction()
        })
        .collect();

    let cells = configs
        .iter()
        .zip(fractions.chunks(realizations))
        .map(|(c, fr)| SweepCell {
            disparity_threshold: match c.drf {
                DisparityResponse::NegativeStep { threshold } => threshold,
                _ => unreachable!(),
            },
            activity_threshold: c.activity_threshold,
            mean_terminal_fraction: numeric::mean(fr.iter().copied()).unwrap_or(0.0),
            std: numeric::sample_std(fr).unwrap_or(0.0),
            fractions: fr.to_vec(),
        })
        .collect();

    Ok(SweepGrid {
        disparity_thresholds: z_grid.to_vec(),
        activity_thresholds: a_grid.to_vec(),
        realizations,
        cells,
    })
}
