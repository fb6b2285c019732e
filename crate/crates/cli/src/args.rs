use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fit_core::engine::{DEFAULT_CONVERGENCE_EPSILON, DEFAULT_MAX_STEPS};
use fit_core::{DisparityResponse, GraphSpec, SimConfig};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_AUX_COUNT: usize = 10;
pub const DEFAULT_DISPARITY_GRID: &str = "0.5:2.6:0.1";
pub const DEFAULT_ACTIVITY_GRID: &str = "0:1:0.1";

#[derive(Debug, Parser)]
#[command(name = "fit", version, about = "Friendship-paradox sharing simulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one network under one response function.
    Run(RunArgs),
    /// Run the 20-network replication suite under every suite response function.
    Suite(SuiteArgs),
    /// Sweep disparity and activity thresholds over random graph realizations.
    Sweep(SweepArgs),
    /// Write the Florentine families network as an edge list.
    ExportFfn(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NetworkKind {
    Er,
    Ba,
    ErAux,
    Ffn,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct NetworkArgs {
    #[arg(long, value_enum, default_value_t = NetworkKind::Ffn)]
    pub network: NetworkKind,
    /// Node count for generated networks (base nodes for er-aux).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Target average degree of a generated network.
    #[arg(long, conflicts_with = "edge_prob")]
    pub avg_degree: Option<f64>,
    /// Edge probability for er and er-aux, as an alternative to --avg-degree.
    #[arg(long)]
    pub edge_prob: Option<f64>,
    /// Number of auxiliary hubs for er-aux.
    #[arg(long, default_value_t = DEFAULT_AUX_COUNT)]
    pub aux_count: usize,
    /// Edge list file for --network file.
    #[arg(long, value_name = "PATH")]
    pub edge_list: Option<PathBuf>,
}

impl NetworkArgs {
    pub fn to_spec(&self, seed: u64) -> Result<GraphSpec, CliError> {
        let generated = |make: fn(usize, f64, u64) -> GraphSpec| -> Result<GraphSpec, CliError> {
            let n = self
                .nodes
                .ok_or_else(|| CliError::usage("--nodes is required for generated networks"))?;
            let avg = match (self.avg_degree, self.edge_prob) {
                (Some(d), _) => d,
                (None, Some(p)) if self.network == NetworkKind::Ba => {
                    return Err(CliError::usage(format!(
                        "--edge-prob {p} does not apply to --network ba; use --avg-degree"
                    )))
                }
                (None, Some(p)) => p * (n as f64 - 1.0),
                (None, None) => {
                    return Err(CliError::usage("one of --avg-degree or --edge-prob is required"))
                }
            };
            Ok(make(n, avg, seed))
        };
        let aux = self.aux_count;
        let spec = match self.network {
            NetworkKind::Er => generated(GraphSpec::erdos_renyi)?,
            NetworkKind::Ba => generated(GraphSpec::barabasi_albert)?,
            NetworkKind::ErAux => {
                let base = generated(GraphSpec::erdos_renyi)?;
                GraphSpec::er_with_auxiliary(base.n, base.target_avg_degree, aux, seed)
            }
            NetworkKind::Ffn => GraphSpec::florentine(),
            NetworkKind::File => {
                let path = self
                    .edge_list
                    .clone()
                    .ok_or_else(|| CliError::usage("--edge-list is required for --network file"))?;
                GraphSpec::edge_list_file(path)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Max-norm rate change at or below which a run counts as converged.
    #[arg(long, default_value_t = DEFAULT_CONVERGENCE_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Response function, e.g. neg-step:1.5, pos-step:1, linear:1.55, inverse, convex:10.
    #[arg(long)]
    pub drf: DisparityResponse,
    /// Fraction of sharing neighbors below which a sharer stops.
    #[arg(long, default_value_t = 0.0)]
    pub activity_threshold: f64,
    #[command(flatten)]
    pub steps: StepArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also write per-node summaries and per-step node rates.
    #[arg(long)]
    pub node_level: bool,
}

impl RunArgs {
    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            max_steps: self.steps.max_steps,
            convergence_epsilon: self.steps.epsilon,
            ..SimConfig::new(self.drf)
        }
        .with_activity_threshold(self.activity_threshold)
        .with_node_level(self.node_level)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteFamily {
    All,
    Er,
    Ba,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = SuiteFamily::All)]
    pub family: SuiteFamily,
    #[command(flatten)]
    pub steps: StepArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub network: NetworkArgs,
    /// Comma-separated values or an inclusive range start:stop:step.
    #[arg(long, default_value = DEFAULT_DISPARITY_GRID)]
    pub disparity_thresholds: String,
    #[arg(long, default_value = DEFAULT_ACTIVITY_GRID)]
    pub activity_thresholds: String,
    #[arg(long, default_value_t = fit_core::analysis::DEFAULT_REALIZATIONS)]
    pub realizations: usize,
    #[command(flatten)]
    pub steps: StepArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a node,name table instead of the edge list.
    #[arg(long)]
    pub names: bool,
}

/// Parses `a,b,c` or the inclusive range `start:stop:step`. Range values are
/// rounded to 1e-9 so that `0:1:0.1` yields exactly 0.3 rather than
/// 0.30000000000000004.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |tok: &str| CliError::usage(format!("invalid grid value '{tok}' in '{text}'"));
    let parse = |tok: &str| tok.trim().parse::<f64>().map_err(|_| bad(tok)).and_then(|x| {
        if x.is_finite() { Ok(x) } else { Err(bad(tok)) }
    });
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [start, stop, step] => {
            let (a, b, h) = (parse(start)?, parse(stop)?, parse(step)?);
            if h <= 0.0 || b < a {
                return Err(CliError::usage(format!(
                    "grid range '{text}' needs start <= stop and a positive step"
                )));
            }
            let count = ((b - a) / h + 1e-9).floor() as usize + 1;
            (0..count).map(|i| ((a + i as f64 * h) * 1e9).round() / 1e9).collect()
        }
        [_] => text.split(',').map(parse).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(bad(text)),
    };
    if values.is_empty() {
        return Err(CliError::usage(format!("grid '{text}' is empty")));
    }
    Ok(values)
}
