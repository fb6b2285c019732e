use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::Utc;
use fit_core::analysis::suite::{self, SuiteNetwork, SuiteRun};
use fit_core::analysis::{realization_seed, threshold_sweep, SweepGrid};
use fit_core::engine::run;
use fit_core::graph::{florentine_family_names, florentine_families, write_edge_list};
use fit_core::{Graph, GraphSpec, NetworkFamily, SimConfig, Trajectory};

use crate::format::{self, num};
use crate::manifest::{DerivedSeed, RunManifest, SweepAxes};
use crate::CliError;

pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const NODES_FILE: &str = "nodes.csv";
pub const NODE_RATES_FILE: &str = "node_rates.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const TRAJECTORY_DIR: &str = "trajectories";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const REALIZATIONS_FILE: &str = "sweep_realizations.csv";

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs `f` on a pool with `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::usage("--workers must be at least 1")),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
    }
}

fn uses_seed(spec: &GraphSpec) -> bool {
    !matches!(spec.family, NetworkFamily::Florentine | NetworkFamily::EdgeListFile(_))
}

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub graph: GraphSpec,
    pub sim: SimConfig,
    pub out: PathBuf,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub graph: Graph,
    pub trajectory: Trajectory,
    pub manifest: RunManifest,
}

/// One simulation. Writes `trajectory.csv`, the manifest and, when the
/// config records node-level history, `nodes.csv` and `node_rates.csv`.
pub fn run_single(req: &RunRequest) -> Result<RunOutcome, CliError> {
    let started = Utc::now();
    req.sim.validate()?;
    let graph = req.graph.build()?;
    let trajectory = run(&graph, &req.sim);

    let mut manifest = RunManifest::new("run", req.graph.seed, req.sim.clone(), started);
    if uses_seed(&req.graph) {
        manifest.derived_seeds.push(DerivedSeed { label: "graph".into(), seed: req.graph.seed });
    }
    manifest.graph = Some(req.graph.clone());

    write_file(&req.out.join(TRAJECTORY_FILE), &format::trajectory_csv(&trajectory))?;
    manifest.outputs.push(TRAJECTORY_FILE.into());
    if req.sim.record_node_level {
        write_file(&req.out.join(NODES_FILE), &format::nodes_csv(&graph, &trajectory))?;
        write_file(&req.out.join(NODE_RATES_FILE), &node_rates_csv(&trajectory))?;
        manifest.outputs.extend([NODES_FILE.into(), NODE_RATES_FILE.into()]);
    }
    let manifest = manifest.finish(&req.out)?;
    Ok(RunOutcome { graph, trajectory, manifest })
}

fn node_rates_csv(traj: &Trajectory) -> String {
    let mut out = String::from("step,node,rate,disparity\n");
    if let Some(h) = &traj.node_history {
        for (t, (rates, disp)) in h.rates.iter().zip(&h.disparity).enumerate() {
            for (u, (&r, z)) in rates.iter().zip(disp).enumerate() {
                let z = z.map(num).unwrap_or_else(|| format::MISSING.into());
                let _ = writeln!(out, "{t},{u},{},{z}", num(r));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SuiteRequest {
    pub networks: Vec<SuiteNetwork>,
    /// Step budget and tolerance; the response function is replaced per run.
    pub sim: SimConfig,
    pub master_seed: u64,
    pub out: PathBuf,
    pub workers: Option<usize>,
}

impl SuiteRequest {
    pub fn standard(master_seed: u64, sim: SimConfig, out: PathBuf, workers: Option<usize>) -> Self {
        Self { networks: suite::suite_networks(master_seed), sim, master_seed, out, workers }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub networks: Vec<SuiteNetwork>,
    pub graphs: Vec<Graph>,
    pub runs: Vec<SuiteRun>,
    pub manifest: RunManifest,
}

/// Every suite network under every suite response function. Writes
/// `summary.csv`, one trajectory file per run and the manifest.
pub fn run_replication_suite(req: &SuiteRequest) -> Result<SuiteOutcome, CliError> {
    let started = Utc::now();
    let drfs = suite::suite_instances();
    let (graphs, runs, workers) = with_workers(req.workers, || {
        let graphs = suite::build_networks(&req.networks)?;
        let runs = suite::run_suite(&graphs, &drfs, &req.sim)?;
        Ok::<_, CliError>((graphs, runs, rayon::current_num_threads()))
    })??;

    let mut manifest = RunManifest::new("suite", req.master_seed, req.sim.clone(), started);
    manifest.workers = workers;
    manifest.drfs = drfs.iter().map(|d| d.to_string()).collect();
    manifest.derived_seeds = req
        .networks
        .iter()
        .map(|n| DerivedSeed { label: n.label.clone(), seed: n.spec.seed })
        .collect();
    manifest.networks = req.networks.clone();

    let mut summary = String::from(format::SUMMARY_HEADER);
    summary.push('\n');
    for r in &runs {
        let net = &req.networks[r.network];
        format::summary_row(&mut summary, net, &graphs[r.network], &r.drf, &r.trajectory);
        let name = format!("{TRAJECTORY_DIR}/{}__{}.csv", net.label, format::drf_file_stem(&r.drf));
        write_file(&req.out.join(&name), &format::trajectory_csv(&r.trajectory))?;
        manifest.outputs.push(name);
    }
    write_file(&req.out.join(SUMMARY_FILE), &summary)?;
    manifest.outputs.insert(0, SUMMARY_FILE.into());
    let manifest = manifest.finish(&req.out)?;
    Ok(SuiteOutcome { networks: req.networks.clone(), graphs, runs, manifest })
}

#[derive(Debug, Clone)]
pub struct SweepRequest {
    /// Its seed is the master seed from which realization seeds derive.
    pub graph: GraphSpec,
    pub disparity_thresholds: Vec<f64>,
    pub activity_thresholds: Vec<f64>,
    pub realizations: usize,
    pub sim: SimConfig,
    pub out: PathBuf,
    pub workers: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub grid: SweepGrid,
    pub manifest: RunManifest,
}

/// Writes `sweep.csv` (one row per cell), `sweep_realizations.csv` and the
/// manifest.
pub fn run_sweep(req: &SweepRequest) -> Result<SweepOutcome, CliError> {
    let started = Utc::now();
    let (grid, workers) = with_workers(req.workers, || {
        let grid = threshold_sweep(
            &req.graph,
            &req.disparity_thresholds,
            &req.activity_thresholds,
            req.realizations,
            &req.sim,
        )?;
        Ok::<_, CliError>((grid, rayon::current_num_threads()))
    })??;

    let seeds: Vec<u64> = (0..req.realizations).map(|i| realization_seed(req.graph.seed, i)).collect();
    let mut manifest = RunManifest::new("sweep", req.graph.seed, req.sim.clone(), started);
    manifest.workers = workers;
    manifest.graph = Some(req.graph.clone());
    manifest.drfs = req
        .disparity_thresholds
        .iter()
        .map(|&z| fit_core::DisparityResponse::NegativeStep { threshold: z }.to_string())
        .collect();
    manifest.derived_seeds = seeds
        .iter()
        .enumerate()
        .map(|(i, &seed)| DerivedSeed { label: format!("realization-{i}"), seed })
        .collect();
    manifest.sweep = Some(SweepAxes {
        disparity_thresholds: req.disparity_thresholds.clone(),
        activity_thresholds: req.activity_thresholds.clone(),
        realizations: req.realizations,
    });

    let mut per = String::from("disparity_threshold,activity_threshold,realization,seed,terminal_fraction\n");
    for c in &grid.cells {
        for (i, f) in c.fractions.iter().enumerate() {
            let _ = writeln!(
                per,
                "{},{},{i},{},{}",
                num(c.disparity_threshold),
                num(c.activity_threshold),
                seeds[i],
                num(*f)
            );
        }
    }
    write_file(&req.out.join(SWEEP_FILE), &format::sweep_csv(&grid))?;
    write_file(&req.out.join(REALIZATIONS_FILE), &per)?;
    manifest.outputs.extend([SWEEP_FILE.into(), REALIZATIONS_FILE.into()]);
    let manifest = manifest.finish(&req.out)?;
    Ok(SweepOutcome { grid, manifest })
}

/// The Florentine network as an edge list, or its `node,name` table.
pub fn florentine_text(names: bool) -> String {
    if names {
        let mut out = String::from("node,name\n");
        for (i, name) in florentine_family_names().iter().enumerate() {
            let _ = writeln!(out, "{i},{name}");
        }
        out
    } else {
        write_edge_list(&florentine_families())
    }
}
