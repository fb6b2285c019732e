//! CSV rendering. Numbers are written with 12 significant digits in the
//! style of C's `%.12g`, independent of locale, so output files are
//! byte-stable across machines.

use std::fmt::Write as _;

use fit_core::analysis::suite::SuiteNetwork;
use fit_core::analysis::{SweepGrid, StepMetrics};
use fit_core::paradox::local_paradox;
use fit_core::{DisparityResponse, Graph, Trajectory};

/// Version of the CSV layouts below; bump when a column changes.
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Written for quantities that have no value at that step.
pub const MISSING: &str = "NA";

pub const TRAJECTORY_HEADER: &str =
    "step,mean_rate,sharer_fraction,mean_wlp,mean_disparity,frac_disparity_up,frac_disparity_down";
pub const NODES_HEADER: &str = "node,degree,lp,terminal_step,final_rate";
pub const SWEEP_HEADER: &str =
    "disparity_threshold,activity_threshold,mean_terminal_fraction,std,realizations";
pub const SUMMARY_HEADER: &str = "network,family,target_avg_degree,nodes,edges,seed,drf,converged,terminal_step,step1_mean_rate,final_mean_rate,terminal_sharer_fraction";

/// Formats like `%.12g`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    const SIG: i32 = 12;
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIG).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (SIG - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| MISSING.to_string())
}

fn metrics_row(out: &mut String, m: &StepMetrics) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{}",
        m.step,
        num(m.mean_rate),
        num(m.sharer_fraction),
        opt(m.mean_wlp),
        opt(m.mean_disparity),
        num(m.frac_disparity_up),
        num(m.frac_disparity_down),
    );
}

/// One row per recorded step.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(64 * (traj.metrics.len() + 1));
    out.push_str(TRAJECTORY_HEADER);
    out.push('\n');
    for m in &traj.metrics {
        metrics_row(&mut out, m);
    }
    out
}

/// One row per node. Nodes still sharing at the end carry the run's
/// terminal step.
pub fn nodes_csv(g: &Graph, traj: &Trajectory) -> String {
    let lp = local_paradox(g);
    let mut out = String::with_capacity(48 * (g.node_count() + 1));
    out.push_str(NODES_HEADER);
    out.push('\n');
    for u in g.nodes() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            u,
            g.degree(u),
            opt(lp.local_paradox[u]),
            traj.node_terminal_step[u],
            num(traj.final_state.rates[u]),
        );
    }
    out
}

pub fn sweep_csv(grid: &SweepGrid) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for c in &grid.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(c.disparity_threshold),
            num(c.activity_threshold),
            num(c.mean_terminal_fraction),
            num(c.std),
            grid.realizations,
        );
    }
    out
}

/// One summary row of the replication suite.
pub fn summary_row(out: &mut String, net: &SuiteNetwork, g: &Graph, drf: &DisparityResponse, traj: &Trajectory) {
    let step1 = traj.metrics.get(1).map(|m| m.mean_rate);
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        net.label,
        fit_core::analysis::suite::family_tag(&net.spec.family),
        num(net.spec.target_avg_degree),
        g.node_count(),
        g.edge_count(),
        net.spec.seed,
        drf,
        traj.converged,
        traj.terminal_step,
        opt(step1),
        num(traj.final_mean_rate()),
        num(traj.terminal_sharer_fraction()),
    );
}

/// File-name-safe form of a response function, e.g. `neg-step_1.5`.
pub fn drf_file_stem(drf: &DisparityResponse) -> String {
    drf.to_string().replace(':', "_")
}
