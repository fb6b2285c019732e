use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{CommandFactory, Parser};
use fit_cli::args::{parse_grid, Cli, Command, SuiteFamily};
use fit_cli::commands::{self, RunRequest, SuiteRequest, SweepRequest};
use fit_cli::CliError;
use fit_core::analysis::suite;
use fit_core::SimConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(CliError::Usage { message }) = e.downcast_ref::<CliError>() {
                Cli::command().error(clap::error::ErrorKind::ValueValidation, message).exit();
            }
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn step_config(steps: &fit_cli::args::StepArgs) -> SimConfig {
    // The response function is replaced per run by the suite and the sweep.
    SimConfig {
        max_steps: steps.max_steps,
        convergence_epsilon: steps.epsilon,
        ..SimConfig::new(fit_core::DisparityResponse::NegativeStep { threshold: 1.0 })
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(a) => {
            let req = RunRequest { graph: a.network.to_spec(a.seed)?, sim: a.sim_config(), out: a.out.clone() };
            let o = commands::run_single(&req)?;
            println!(
                "{} nodes, {} edges; {} after step {}; sharer fraction {}; output in {}",
                o.graph.node_count(),
                o.graph.edge_count(),
                if o.trajectory.converged { "converged" } else { "stopped" },
                o.trajectory.terminal_step,
                fit_cli::format::num(o.trajectory.terminal_sharer_fraction()),
                a.out.display()
            );
        }
        Command::Suite(a) => {
            let networks = match a.family {
                SuiteFamily::All => suite::suite_networks(a.seed),
                SuiteFamily::Er => suite::erdos_renyi_networks(a.seed),
                SuiteFamily::Ba => suite::barabasi_albert_networks(a.seed),
            };
            let req = SuiteRequest {
                networks,
                sim: step_config(&a.steps),
                master_seed: a.seed,
                out: a.out.clone(),
                workers: a.workers,
            };
            let o = commands::run_replication_suite(&req)?;
            println!("{} runs on {} networks; output in {}", o.runs.len(), o.graphs.len(), a.out.display());
        }
        Command::Sweep(a) => {
            let req = SweepRequest {
                graph: a.network.to_spec(a.seed)?,
                disparity_thresholds: parse_grid(&a.disparity_thresholds)?,
                activity_thresholds: parse_grid(&a.activity_thresholds)?,
                realizations: a.realizations,
                sim: step_config(&a.steps),
                out: a.out.clone(),
                workers: a.workers,
            };
            let o = commands::run_sweep(&req)?;
            println!("{} cells x {} realizations; output in {}", o.grid.cells.len(), o.grid.realizations, a.out.display());
        }
        Command::ExportFfn(a) => {
            let text = commands::florentine_text(a.names);
            match a.out {
                Some(path) => commands::write_file(&path, &text)?,
                None => std::io::stdout().write_all(text.as_bytes()).context("writing to stdout")?,
            }
        }
    }
    Ok(())
}
