//! Discrete-time evolution of sharing rates.
//!
//! Each step is a synchronous update from the time-`t` snapshot:
//!
//! 1. a node whose rate is 0 stays at 0 for good;
//! 2. a sharer none of whose neighbors share keeps its baseline rate
//!    (isolated nodes always land here);
//! 3. otherwise the new rate is `drf(z) * baseline`, where `z` is the node's
//!    feedback disparity (its weighted local paradox).
//!
//! With a positive activity threshold `a*`, a sharer whose fraction of
//! sharing neighbors is strictly below `a*` also drops to 0. Both rules read
//! the same snapshot; either one firing churns the node.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::metrics::{metrics_from_fields, StepMetrics};
use crate::drf::DisparityResponse;
use crate::graph::Graph;
use crate::paradox::{NeighborField, RateVector};

/// Default step budget: one year of weekly steps.
pub const DEFAULT_MAX_STEPS: usize = 52;
/// Default max-norm rate change below which a run counts as converged.
pub const DEFAULT_CONVERGENCE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("max_steps must be at least 1")]
    NoSteps,
    #[error("convergence epsilon must be finite and >= 0, got {0}")]
    Epsilon(f64),
    #[error("activity threshold must lie in [0, 1], got {0}")]
    ActivityThreshold(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub drf: DisparityResponse,
    pub max_steps: usize,
    pub convergence_epsilon: f64,
    pub activity_threshold: f64,
    /// Keep per-step node rates and disparities in the trajectory.
    pub record_node_level: bool,
}

impl SimConfig {
    pub fn new(drf: DisparityResponse) -> Self {
        Self {
            drf,
            max_steps: DEFAULT_MAX_STEPS,
            convergence_epsilon: DEFAULT_CONVERGENCE_EPSILON,
            activity_threshold: 0.0,
            record_node_level: false,
        }
    }

    pub fn with_activity_threshold(mut self, a: f64) -> Self {
        self.activity_threshold = a;
        self
    }

    pub fn with_max_steps(mut self, steps: usize) -> Self {
        self.max_steps = steps;
        self
    }

    pub fn with_node_level(mut self, record: bool) -> Self {
        self.record_node_level = record;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_steps < 1 {
            return Err(ConfigError::NoSteps);
        }
        if !(self.convergence_epsilon.is_finite() && self.convergence_epsilon >= 0.0) {
            return Err(ConfigError::Epsilon(self.convergence_epsilon));
        }
        if !(0.0..=1.0).contains(&self.activity_threshold) {
            return Err(ConfigError::ActivityThreshold(self.activity_threshold));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub t: usize,
    pub rates: RateVector,
    pub baseline: RateVector,
    /// Set once a node's rate has reached 0; never cleared.
    pub churned: Vec<bool>,
}

impl SimState {
    /// State at `t = 0` with the given baseline rates.
    pub fn with_baseline(baseline: RateVector) -> Self {
        let churned = baseline.iter().map(|&r| r == 0.0).collect();
        Self { t: 0, rates: baseline.clone(), baseline, churned }
    }

    pub fn node_count(&self) -> usize {
        self.rates.len()
    }

    pub fn sharer_count(&self) -> usize {
        self.rates.iter().filter(|&&r| r > 0.0).count()
    }
}

/// Per-step node-level record, kept when `record_node_level` is set.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeHistory {
    /// `rates[t][u]`
    pub rates: Vec<Vec<f64>>,
    /// `disparity[t][u]`; `None` when `u` is not sharing or has no sharing neighbor.
    pub disparity: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// One entry per recorded step, `0..=terminal_step`.
    pub metrics: Vec<StepMetrics>,
    pub terminal_step: usize,
    pub converged: bool,
    /// Last step at which each node's rate was positive. Nodes still sharing
    /// at the end carry `terminal_step`.
    pub node_terminal_step: Vec<usize>,
    pub final_state: SimState,
    pub node_history: Option<NodeHistory>,
}

impl Trajectory {
    pub fn final_metrics(&self) -> &StepMetrics {
        self.metrics.last().expect("a trajectory always records step 0")
    }

    pub fn terminal_sharer_fraction(&self) -> f64 {
        self.final_metrics().sharer_fraction
    }

    pub fn final_mean_rate(&self) -> f64 {
        self.final_metrics().mean_rate
    }
}

/// Every node starts at rate 1.
pub fn init(g: &Graph, _cfg: &SimConfig) -> SimState {
    SimState::with_baseline(RateVector::uniform(g.node_count(), 1.0))
}

/// One synchronous update.
pub fn step(g: &Graph, s: &SimState, cfg: &SimConfig) -> SimState {
    let field = NeighborField::compute(g, &s.rates);
    step_with_field(g, s, &field, cfg)
}

fn step_with_field(g: &Graph, s: &SimState, field: &NeighborField, cfg: &SimConfig) -> SimState {
    let a_star = cfg.activity_threshold;
    let mut churned = s.churned.clone();
    let rates: Vec<f64> = g
        .nodes()
        .map(|u| {
            let r = s.rates[u];
            if churned[u] || r == 0.0 {
                return 0.0;
            }
            let base = s.baseline[u];
            let mut next = match field.wlp[u] {
                None => base,
                Some(z) => {
                    // z > 0 here: some neighbor shares and every neighbor has degree >= 1.
                    cfg.drf.evaluate(z).expect("disparity of a sharer is positive") * base
                }
            };
            let d = g.degree(u);
            if a_star > 0.0 && d > 0 && (field.sharing[u] as f64) / (d as f64) < a_star {
                next = 0.0;
            }
            next
        })
        .collect();
    for (flag, &r) in churned.iter_mut().zip(&rates) {
        if r == 0.0 {
            *flag = true;
        }
    }
    SimState {
        t: s.t + 1,
        rates: RateVector::from_vec_unchecked(rates),
        baseline: s.baseline.clone(),
        churned,
    }
}

fn max_abs_change(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Runs from the uniform initial state until no rate moves by more than the
/// convergence epsilon, or until `max_steps`.
///
/// Convergence is only declared from step 1 onward: the step `t -> t + 1`
/// is computed and, if it changes nothing, discarded and `t` becomes the
/// terminal step. A run that exhausts its budget is still probed once more,
/// so `converged` is accurate at `t = max_steps` as well.
pub fn run(g: &Graph, cfg: &SimConfig) -> Trajectory {
    run_from(g, init(g, cfg), cfg)
}

/// As [`run`], from an arbitrary initial state.
pub fn run_from(g: &Graph, initial: SimState, cfg: &SimConfig) -> Trajectory {
    let n = g.node_count();
    assert_eq!(initial.node_count(), n, "state does not match graph");
    let mut state = initial;
    let mut field = NeighborField::compute(g, &state.rates);
    let mut metrics = vec![metrics_from_fields(g, state.t, None, &state.rates, &field)];
    let mut history = cfg.record_node_level.then(NodeHistory::default);
    let record = |h: &mut Option<NodeHistory>, s: &SimState, f: &NeighborField| {
        if let Some(h) = h.as_mut() {
            h.rates.push(s.rates.to_vec());
            h.disparity.push((0..n).map(|u| f.disparity(&s.rates, u)).collect());
        }
    };
    record(&mut history, &state, &field);
    let mut last_positive: Vec<usize> = vec![state.t; n];

    let converged = loop {
        let next = step_with_field(g, &state, &field, cfg);
        let delta = max_abs_change(&state.rates, &next.rates);
        if state.t >= 1 && delta <= cfg.convergence_epsilon {
            break true;
        }
        if state.t >= cfg.max_steps {
            break false;
        }
        let next_field = NeighborField::compute(g, &next.rates);
        metrics.push(metrics_from_fields(
            g,
            next.t,
            Some((&state.rates, &field)),
            &next.rates,
            &next_field,
        ));
        record(&mut history, &next, &next_field);
        for (u, &r) in next.rates.iter().enumerate() {
            if r > 0.0 {
                last_positive[u] = next.t;
            }
        }
        state = next;
        field = next_field;
    };

    Trajectory {
        metrics,
        terminal_step: state.t,
        converged,
        node_terminal_step: last_positive,
        final_state: state,
        node_history: history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{florentine_families, florentine_family_names, generate_erdos_renyi};
    use crate::paradox::local_paradox;

    fn neg(k: f64) -> SimConfig {
        SimConfig::new(DisparityResponse::negative_step(k).unwrap())
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(&edges, n).unwrap()
    }

    #[test]
    fn init_is_uniform() {
        let g = cycle(5);
        let s = init(&g, &neg(1.0));
        assert!(s.rates.iter().all(|&r| r == 1.0));
        assert_eq!(s.t, 0);
        assert!(s.churned.iter().all(|c| !c));
        let empty = init(&Graph::empty(0), &neg(1.0));
        assert_eq!(empty.node_count(), 0);
    }

    #[test]
    fn florentine_walkthrough() {
        let g = florentine_families();
        let cfg = neg(1.5);
        let s0 = init(&g, &cfg);
        let s1 = step(&g, &s0, &cfg);
        let s2 = step(&g, &s1, &cfg);
        let s3 = step(&g, &s2, &cfg);
        assert_eq!(15 - s1.sharer_count(), 6);
        assert_eq!(s1.sharer_count() - s2.sharer_count(), 1);
        assert_eq!(s3.rates, s2.rates);
        let names = florentine_family_names();
        let churned_first: Vec<_> =
            g.nodes().filter(|&u| s1.rates[u] == 0.0).map(|u| names[u]).collect();
        assert_eq!(
            churned_first,
            ["Acciaiuoli", "Barbadori", "Ginori", "Lamberteschi", "Pazzi", "Salviati"]
        );
        let churned_second: Vec<_> = g
            .nodes()
            .filter(|&u| s1.rates[u] > 0.0 && s2.rates[u] == 0.0)
            .map(|u| names[u])
            .collect();
        assert_eq!(churned_second, ["Albizzi"]);

        let traj = run(&g, &cfg);
        assert!(traj.converged);
        assert_eq!(traj.terminal_step, 2);
        assert_eq!(traj.metrics.len(), 3);
        assert_eq!(traj.final_state.sharer_count(), 8);
    }

    #[test]
    fn florentine_disparity_threshold_one_keeps_central_families() {
        let g = florentine_families();
        let traj = run(&g, &neg(1.0));
        let names = florentine_family_names();
        let sharing: Vec<_> = g
            .nodes()
            .filter(|&u| traj.final_state.rates[u] > 0.0)
            .map(|u| names[u])
            .collect();
        assert_eq!(sharing, ["Guadagni", "Medici", "Strozzi"]);
    }

    #[test]
    fn florentine_activity_threshold_churns_medici() {
        let g = florentine_families();
        let traj = run(&g, &neg(1.5).with_activity_threshold(0.5));
        let names = florentine_family_names();
        let medici = names.iter().position(|&n| n == "Medici").unwrap();
        assert_eq!(traj.final_state.rates[medici], 0.0);
        for fam in ["Tornabuoni", "Ridolfi"] {
            let u = names.iter().position(|&n| n == fam).unwrap();
            assert_eq!(traj.final_state.rates[u], 1.0, "{fam}");
        }
    }

    #[test]
    fn initial_disparity_equals_local_paradox() {
        let g = florentine_families();
        let s = init(&g, &neg(1.5));
        let field = NeighborField::compute(&g, &s.rates);
        let lp = local_paradox(&g);
        for u in g.nodes() {
            let z = field.disparity(&s.rates, u).unwrap();
            assert!((z - lp.local_paradox[u].unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn cycle_never_churns() {
        let g = cycle(9);
        for k in [1.0, 1.5, 2.6] {
            let traj = run(&g, &neg(k));
            assert!(traj.converged);
            assert_eq!(traj.terminal_step, 1);
            assert_eq!(traj.final_state.sharer_count(), 9);
        }
    }

    #[test]
    fn isolated_nodes_keep_baseline() {
        let g = Graph::from_edge_list(&[(0, 1), (0, 2)], 4).unwrap();
        let traj = run(&g, &SimConfig::new(DisparityResponse::Inverse));
        assert_eq!(traj.final_state.rates[3], 1.0);
        let traj = run(&g, &neg(0.5).with_activity_threshold(0.9));
        assert_eq!(traj.final_state.rates[3], 1.0);
    }

    #[test]
    fn sharer_with_no_sharing_neighbor_keeps_baseline() {
        // Star: leaves see z = 4 and churn at threshold 1; the center saw z = 0.25.
        let g = Graph::from_edge_list(&[(0, 1), (0, 2), (0, 3)], 4).unwrap();
        let cfg = neg(1.0);
        let s1 = step(&g, &init(&g, &cfg), &cfg);
        assert_eq!(s1.rates.to_vec(), vec![1.0, 0.0, 0.0, 0.0]);
        let s2 = step(&g, &s1, &cfg);
        assert_eq!(s2.rates[0], 1.0);
    }

    #[test]
    fn activity_zero_matches_base_model() {
        let g = generate_erdos_renyi(300, 0.03, 4).unwrap();
        for drf in ["neg-step:1.2", "inverse", "linear:1.55", "convex:10"] {
            let cfg = SimConfig::new(drf.parse().unwrap());
            let a = run(&g, &cfg);
            let b = run(&g, &cfg.clone().with_activity_threshold(0.0));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn converged_run_is_a_fixed_point() {
        let g = generate_erdos_renyi(300, 0.05, 8).unwrap();
        for drf in ["neg-step:1.1", "inverse", "linear:2.05", "pos-step:1"] {
            let cfg = SimConfig::new(drf.parse().unwrap());
            let traj = run(&g, &cfg);
            if traj.converged {
                let again = step(&g, &traj.final_state, &cfg);
                assert!(max_abs_change(&again.rates, &traj.final_state.rates) <= cfg.convergence_epsilon);
            }
            assert_eq!(traj.metrics.len(), traj.terminal_step + 1);
            assert!(traj.terminal_step <= cfg.max_steps);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = florentine_families();
        let traj = run(&g, &neg(1.5).with_max_steps(1));
        assert!(!traj.converged);
        assert_eq!(traj.terminal_step, 1);
        assert_eq!(traj.metrics.len(), 2);
    }

    #[test]
    fn node_terminal_steps() {
        let g = florentine_families();
        let traj = run(&g, &neg(1.5).with_node_level(true));
        let names = florentine_family_names();
        for u in g.nodes() {
            let expected = match names[u] {
                "Acciaiuoli" | "Barbadori" | "Ginori" | "Lamberteschi" | "Pazzi" | "Salviati" => 0,
                "Albizzi" => 1,
                _ => 2,
            };
            assert_eq!(traj.node_terminal_step[u], expected, "{}", names[u]);
        }
        let h = traj.node_history.unwrap();
        assert_eq!(h.rates.len(), 3);
        assert_eq!(h.disparity.len(), 3);
    }

    #[test]
    fn config_validation() {
        assert!(neg(1.0).validate().is_ok());
        assert_eq!(neg(1.0).with_max_steps(0).validate(), Err(ConfigError::NoSteps));
        assert!(neg(1.0).with_activity_threshold(1.5).validate().is_err());
        let mut c = neg(1.0);
        c.convergence_epsilon = -1.0;
        assert!(c.validate().is_err());
    }
}
