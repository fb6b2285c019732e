use serde::Serialize;

use crate::graph::Graph;
use crate::numeric::NeumaierSum;
use crate::paradox::NeighborField;
use crate::engine::SimState;

/// Disparity moves smaller than this between steps count as unchanged.
pub const DISPARITY_CHANGE_TOLERANCE: f64 = 1e-12;

/// Network-level aggregates for one step.
///
/// Populations differ per field: `mean_wlp` averages over every node with at
/// least one sharing neighbor; `mean_disparity` only over those that also
/// share themselves. The up/down fractions are taken over sharers whose
/// disparity is defined at both this step and the previous one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepMetrics {
    pub step: usize,
    pub mean_rate: f64,
    pub sharer_fraction: f64,
    pub mean_wlp: Option<f64>,
    pub mean_disparity: Option<f64>,
    pub frac_disparity_up: f64,
    pub frac_disparity_down: f64,
}

/// Metrics of `cur`, comparing disparities against `prev` when given.
pub fn step_metrics(g: &Graph, prev: Option<&SimState>, cur: &SimState) -> StepMetrics {
    let cur_field = NeighborField::compute(g, &cur.rates);
    let prev_field = prev.map(|p| (p, NeighborField::compute(g, &p.rates)));
    metrics_from_fields(
        g,
        cur.t,
        prev_field.as_ref().map(|(p, f)| (&p.rates[..], f)),
        &cur.rates,
        &cur_field,
    )
}

pub(crate) fn metrics_from_fields(
    g: &Graph,
    step: usize,
    prev: Option<(&[f64], &NeighborField)>,
    rates: &[f64],
    field: &NeighborField,
) -> StepMetrics {
    let n = g.node_count();
    let mut rate_sum = NeumaierSum::new();
    let mut sharers = 0usize;
    let mut wlp_sum = NeumaierSum::new();
    let mut wlp_count = 0usize;
    let mut z_sum = NeumaierSum::new();
    let mut z_count = 0usize;
    let (mut up, mut down, mut compared) = (0usize, 0usize, 0usize);

    for u in g.nodes() {
        let r = rates[u];
        rate_sum.add(r);
        if r > 0.0 {
            sharers += 1;
        }
        if let Some(w) = field.wlp[u] {
            wlp_sum.add(w);
            wlp_count += 1;
        }
        if let Some(z) = field.disparity(rates, u) {
            debug_assert!(field.wlp[u].is_some(), "disparity population must nest in wlp population");
            z_sum.add(z);
            z_count += 1;
            if let Some(z_prev) = prev.and_then(|(pr, pf)| pf.disparity(pr, u)) {
                compared += 1;
                if z > z_prev + DISPARITY_CHANGE_TOLERANCE {
                    up += 1;
                } else if z < z_prev - DISPARITY_CHANGE_TOLERANCE {
                    down += 1;
                }
            }
        }
    }
    assert!(z_count <= wlp_count);

    let frac = |k: usize, of: usize| if of == 0 { 0.0 } else { k as f64 / of as f64 };
    StepMetrics {
        step,
        mean_rate: if n == 0 { 0.0 } else { rate_sum.value() / n as f64 },
        sharer_fraction: frac(sharers, n),
        mean_wlp: (wlp_count > 0).then(|| wlp_sum.value() / wlp_count as f64),
        mean_disparity: (z_count > 0).then(|| z_sum.value() / z_count as f64),
        frac_disparity_up: frac(up, compared),
        frac_disparity_down: frac(down, compared),
    }
}
