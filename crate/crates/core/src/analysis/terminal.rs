use serde::Serialize;

use crate::engine::Trajectory;
use crate::graph::Graph;
use crate::numeric;
use crate::paradox::local_paradox;

/// Default local-paradox bucket width for [`paradox_terminal_heatmap`].
pub const DEFAULT_BUCKET_WIDTH: f64 = 0.1;

/// `(lp_u, terminal step of u)` for every node with a defined local paradox.
pub fn paradox_terminal_pairs(g: &Graph, traj: &Trajectory) -> Vec<(f64, usize)> {
    local_paradox(g)
        .defined()
        .map(|(u, lp)| (lp, traj.node_terminal_step[u]))
        .collect()
}

/// Pearson correlation between local paradox and terminal sharing step.
/// `None` when either series has zero variance.
pub fn terminal_correlation(g: &Graph, traj: &Trajectory) -> Option<f64> {
    let pairs = paradox_terminal_pairs(g, traj);
    let lp: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let steps: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
    numeric::pearson(&lp, &steps)
}

/// Pearson correlation over the union of nodes from several runs, each
/// paired with the graph it ran on.
pub fn pooled_terminal_correlation<'a, I>(runs: I) -> Option<f64>
where
    I: IntoIterator<Item = (&'a Graph, &'a Trajectory)>,
{
    let (mut lp, mut steps) = (Vec::new(), Vec::new());
    for (g, traj) in runs {
        for (x, t) in paradox_terminal_pairs(g, traj) {
            lp.push(x);
            steps.push(t as f64);
        }
    }
    numeric::pearson(&lp, &steps)
}

/// Fraction of nodes in each local-paradox bucket that stop sharing at each
/// step. Only non-empty buckets get a row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParadoxTerminalHeatmap {
    pub bucket_width: f64,
    /// Lower edge of each row's bucket, ascending.
    pub bucket_lower_edges: Vec<f64>,
    /// Column `j` is terminal step `j`, for `0..=terminal_step`.
    pub steps: Vec<usize>,
    pub counts: Vec<Vec<usize>>,
    pub fractions: Vec<Vec<f64>>,
}

fn bucket_of(lp: f64, width: f64) -> i64 {
    // Nudge so that values sitting on an edge (1.8 with width 0.1) do not
    // fall into the bucket below through representation error.
    (lp / width + 1e-9).floor() as i64
}

pub fn paradox_terminal_heatmap(g: &Graph, traj: &Trajectory, bucket_width: f64) -> ParadoxTerminalHeatmap {
    assert!(bucket_width > 0.0, "bucket width must be positive");
    let steps: Vec<usize> = (0..=traj.terminal_step).collect();
    let mut rows: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for (lp, t) in paradox_terminal_pairs(g, traj) {
        rows.entry(bucket_of(lp, bucket_width)).or_insert_with(|| vec![0; steps.len()])[t] += 1;
    }
    let bucket_lower_edges = rows.keys().map(|&b| b as f64 * bucket_width).collect();
    let counts: Vec<Vec<usize>> = rows.into_values().collect();
    let fractions = counts
        .iter()
        .map(|row| {
            let total: usize = row.iter().sum();
            row.iter().map(|&c| c as f64 / total as f64).collect()
        })
        .collect();
    ParadoxTerminalHeatmap { bucket_width, bucket_lower_edges, steps, counts, fractions }
}
