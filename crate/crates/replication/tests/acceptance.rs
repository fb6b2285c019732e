//! Acceptance criteria at full scale. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fit_cli::commands::{run_replication_suite, run_single, run_sweep, RunRequest, SuiteRequest, SweepRequest};
use fit_core::analysis::suite::{self, SuiteRun};
use fit_core::analysis::{pooled_terminal_correlation, terminal_correlation};
use fit_core::drf::DisparityResponse;
use fit_core::engine::{run, SimConfig};
use fit_core::graph::{florentine_families, generate_erdos_renyi};
use fit_core::numeric;
use fit_core::paradox::{
    avg_friend_degree, feedback_disparity, sharing_bias, weighted_local_paradox, EngagementModel,
    RateVector,
};
use fit_core::rng::rng_from_seed;
use fit_core::{Graph, GraphSpec};
use rand::Rng;

const MASTER_SEED: u64 = 2024;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn neg(k: f64) -> DisparityResponse {
    DisparityResponse::negative_step(k).unwrap()
}

fn ffn_walkthrough() -> Outcome {
    let start = Instant::now();
    let g = florentine_families();
    let traj = run(&g, &SimConfig::new(neg(1.5)));
    let elapsed = start.elapsed();
    let sharers: Vec<usize> = traj
        .metrics
        .iter()
        .map(|m| (m.sharer_fraction * g.node_count() as f64).round() as usize)
        .collect();
    let churn: Vec<usize> = sharers.windows(2).map(|w| w[0] - w[1]).collect();
    let pass = traj.converged
        && traj.terminal_step == 2
        && churn == [6, 1]
        && elapsed < Duration::from_millis(10);
    Outcome {
        id: 1,
        name: "FFN walkthrough",
        pass,
        detail: format!(
            "converged={} at step {}, churned per step {:?}, {} still sharing, {} (limit 10 ms)",
            traj.converged,
            traj.terminal_step,
            churn,
            sharers.last().unwrap(),
            ms(elapsed)
        ),
    }
}

fn er_collapse() -> Outcome {
    let start = Instant::now();
    let nets = suite::erdos_renyi_networks(MASTER_SEED);
    let graphs = suite::build_networks(&nets).unwrap();
    let runs = suite::run_suite(&graphs, &[neg(1.0)], &SimConfig::new(neg(1.0))).unwrap();
    let elapsed = start.elapsed();
    let worst = runs
        .iter()
        .map(|r| (r.trajectory.terminal_sharer_fraction(), &nets[r.network].label))
        .fold((f64::MIN, &nets[0].label), |a, b| if b.0 > a.0 { b } else { a });
    Outcome {
        id: 2,
        name: "ER collapse at threshold 1",
        pass: worst.0 < 0.05 && elapsed < Duration::from_secs(30),
        detail: format!(
            "max terminal sharer fraction {:.4} ({}) over 10 networks (limit 0.05), {} (limit 30 s)",
            worst.0,
            worst.1,
            secs(elapsed)
        ),
    }
}

struct SuiteData {
    nets: Vec<suite::SuiteNetwork>,
    graphs: Vec<Graph>,
    runs: Vec<SuiteRun>,
}

impl SuiteData {
    fn runs_of<'a>(&'a self, drf: DisparityResponse, family: &'a str) -> impl Iterator<Item = &'a SuiteRun> + 'a {
        self.runs
            .iter()
            .filter(move |r| r.drf == drf && self.nets[r.network].label.starts_with(family))
    }
}

fn ba_decline(s: &SuiteData) -> Outcome {
    let declines: Vec<(f64, &str)> = s
        .runs_of(neg(2.5), "ba-")
        .map(|r| {
            let low = r.trajectory.metrics.iter().take(16).map(|m| m.mean_rate).fold(f64::MAX, f64::min);
            (1.0 - low, s.nets[r.network].label.as_str())
        })
        .collect();
    let best = declines.iter().copied().fold((f64::MIN, ""), |a, b| if b.0 > a.0 { b } else { a });
    let count = declines.iter().filter(|d| d.0 >= 0.35).count();
    Outcome {
        id: 3,
        name: "BA decline depth",
        pass: best.0 >= 0.35,
        detail: format!(
            "largest decline within 15 steps {:.3} ({}); {count}/10 networks reach 0.35",
            best.0, best.1
        ),
    }
}

fn terminal_correlation_check(s: &SuiteData) -> (Outcome, String) {
    let runs: Vec<&SuiteRun> = s.runs_of(neg(2.0), "ba-").collect();
    let per_graph: Vec<f64> = runs
        .iter()
        .map(|r| terminal_correlation(&s.graphs[r.network], &r.trajectory).expect("defined correlation"))
        .collect();
    let mean = numeric::mean(per_graph.iter().copied()).unwrap();
    let pooled = pooled_terminal_correlation(runs.iter().map(|r| (&s.graphs[r.network], &r.trajectory))).unwrap();
    let range = per_graph.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let outcome = Outcome {
        id: 4,
        name: "Terminal-step correlation",
        pass: (-0.75..=-0.60).contains(&mean),
        detail: format!(
            "mean of per-graph Pearson r {mean:.4} (per-graph {:.4}..{:.4}), required [-0.75, -0.60]",
            range.0, range.1
        ),
    };
    let info = format!("pooled over all nodes of the 10 graphs: r = {pooled:.4}");
    (outcome, info)
}

fn identity_suite() -> Outcome {
    let mut rng = rng_from_seed(MASTER_SEED);
    let (mut trials, mut worst_z, mut worst_sb, mut scale_ok) = (0usize, 0.0f64, 0.0f64, true);
    let mut seed = 0;
    while trials < 2000 {
        seed += 1;
        let n = rng.random_range(3..80);
        let g = generate_erdos_renyi(n, rng.random_range(0.05..0.6), seed).unwrap();
        let rates: Vec<f64> = (0..n)
            .map(|_| if rng.random_bool(0.15) { 0.0 } else { rng.random_range(0.01..10.0) })
            .collect();
        let r = RateVector::new(rates).unwrap();
        let k = rng.random_range(0.05..20.0);
        let e = EngagementModel::constant(k).unwrap();
        let e2 = EngagementModel::constant(k * rng.random_range(0.1..10.0)).unwrap();
        let u = rng.random_range(0..n);
        let (Ok(z), Ok(w)) = (feedback_disparity(&g, &r, e, u), weighted_local_paradox(&g, &r, u)) else {
            continue;
        };
        let lp = avg_friend_degree(&g, u).unwrap() / g.degree(u) as f64;
        let sb = sharing_bias(&g, &r, u).unwrap();
        worst_z = worst_z.max((z - w).abs());
        worst_sb = worst_sb.max((w - lp * sb).abs());
        scale_ok &= feedback_disparity(&g, &r, e2, u).unwrap().to_bits() == z.to_bits();
        trials += 1;
    }
    Outcome {
        id: 5,
        name: "Disparity identity suite",
        pass: worst_z <= 1e-12 && worst_sb <= 1e-12 && scale_ok,
        detail: format!(
            "{trials} trials: max |z - wlp| {worst_z:.2e}, max |wlp - lp*sb| {worst_sb:.2e}, K rescaling bit-identical: {scale_ok}"
        ),
    }
}

fn sweep_request(out: &Path, workers: usize) -> SweepRequest {
    let a_grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    SweepRequest {
        graph: GraphSpec::er_with_auxiliary(1000, 0.01 * 999.0, 10, MASTER_SEED),
        disparity_thresholds: vec![2.2],
        activity_thresholds: a_grid,
        realizations: 50,
        sim: SimConfig::new(neg(2.2)),
        out: out.to_path_buf(),
        workers: Some(workers),
    }
}

fn activity_heatmap(out: &Path) -> (Outcome, String) {
    let start = Instant::now();
    let grid = run_sweep(&sweep_request(out, 8)).unwrap().grid;
    let elapsed = start.elapsed();
    let base = grid.find(2.2, 0.0).unwrap();
    let intermediate: Vec<(f64, f64)> = grid
        .cells
        .iter()
        .filter(|c| c.activity_threshold > 0.0 && c.activity_threshold < 1.0)
        .map(|c| (c.activity_threshold, c.mean_terminal_fraction))
        .collect();
    let best = intermediate.iter().copied().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    let hub_floor = 10.0 / 1010.0;
    let at_floor = base.fractions.iter().filter(|&&f| (f - hub_floor).abs() < 1e-12).count();
    let outcome = Outcome {
        id: 6,
        name: "Activity-threshold heatmap",
        pass: base.mean_terminal_fraction < 0.02 && best.1 > 0.05 && elapsed < Duration::from_secs(300),
        detail: format!(
            "a*=0: {:.4} (limit < 0.02); best intermediate a*={}: {:.4} (limit > 0.05); {} (limit 5 min)",
            base.mean_terminal_fraction,
            best.0,
            best.1,
            secs(elapsed)
        ),
    };
    let max = base.fractions.iter().copied().fold(0.0, f64::max);
    let info = format!(
        "a*=0 realizations: {at_floor}/50 end with exactly the 10 hubs sharing ({hub_floor:.4}); largest {max:.4}"
    );
    (outcome, info)
}

fn long_term_decline(s: &SuiteData) -> Outcome {
    let (mut checked, mut bad) = (0usize, Vec::new());
    for r in &s.runs {
        let m = &r.trajectory.metrics;
        let label = &s.nets[r.network].label;
        let monotone_family = matches!(r.drf, DisparityResponse::NegativeStep { .. } | DisparityResponse::Linear { .. });
        if monotone_family {
            checked += 1;
            if r.trajectory.final_mean_rate() > m[1].mean_rate {
                bad.push(format!("{label} {} final above step 1", r.drf));
            }
        }
        if r.drf.is_step() && m.windows(2).skip(1).any(|w| w[1].mean_rate > w[0].mean_rate) {
            bad.push(format!("{label} {} rises after step 1", r.drf));
        }
    }
    Outcome {
        id: 7,
        name: "Monotone-response long-term decline",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} negative-step and linear runs end at or below step 1; step trajectories non-increasing")
        } else {
            format!("{} violations, first: {}", bad.len(), bad[0])
        },
    }
}

fn positive_step(s: &SuiteData) -> Outcome {
    let pos = DisparityResponse::positive_step(1.0).unwrap();
    let (mut n, mut bad) = (0, 0);
    for r in s.runs_of(pos, "ba-") {
        n += 1;
        let m = &r.trajectory.metrics;
        if m.windows(2).skip(1).any(|w| w[1].sharer_fraction > w[0].sharer_fraction) {
            bad += 1;
        }
    }
    Outcome {
        id: 8,
        name: "Positive-step decline",
        pass: n > 0 && bad == 0,
        detail: format!("{}/{n} BA networks have a non-increasing sharer fraction after step 1", n - bad),
    }
}

fn convex_equilibrium(s: &SuiteData) -> (Outcome, String) {
    let cfg = SimConfig::new(DisparityResponse::convex(10.0).unwrap()).with_node_level(true);
    let mut rows = Vec::new();
    let (mut all_bounded, mut unconverged) = (true, Vec::new());
    let (mut rose, mut below_initial) = (0, 0);
    for (i, net) in s.nets.iter().enumerate().filter(|(_, n)| n.label.starts_with("ba-")) {
        let traj = run(&s.graphs[i], &cfg);
        let h = traj.node_history.as_ref().unwrap();
        all_bounded &= h.rates.iter().flatten().all(|&r| (0.0..=10.0).contains(&r));
        if !traj.converged {
            unconverged.push(net.label.clone());
        }
        rose += usize::from(traj.final_mean_rate() > traj.metrics[1].mean_rate);
        below_initial += usize::from(traj.final_mean_rate() < 1.0);
        rows.push(format!(
            "{} {:.3}->{:.3}",
            net.label,
            traj.metrics[1].mean_rate,
            traj.final_mean_rate()
        ));
    }
    let outcome = Outcome {
        id: 9,
        name: "Convex boundedness and equilibrium",
        pass: all_bounded && unconverged.is_empty(),
        detail: format!(
            "rates within [0, 10]: {all_bounded}; not converged within 52 steps: {}",
            if unconverged.is_empty() { "none".to_string() } else { unconverged.join(", ") }
        ),
    };
    let info = format!(
        "direction: {rose}/{n} end above step 1, {below_initial}/{n} end below the initial rate 1 \
         (no mixed direction on either reference); mean rate step 1 -> end: {}",
        rows.join("; "),
        n = rows.len()
    );
    (outcome, info)
}

fn csv_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "csv") {
                let key = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(key, std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let tmp = tempfile::tempdir().unwrap();
    let dir = |name: &str| tmp.path().join(name);
    let mut outcomes = Vec::new();
    let mut notes = Vec::new();

    outcomes.push(ffn_walkthrough());
    outcomes.push(er_collapse());

    let suite_req = |out: &Path, workers| {
        SuiteRequest::standard(MASTER_SEED, SimConfig::new(neg(1.0)), out.to_path_buf(), Some(workers))
    };
    let start = Instant::now();
    let suite8 = run_replication_suite(&suite_req(&dir("suite-8a"), 8)).unwrap();
    let suite_time = start.elapsed();
    let data = SuiteData { nets: suite8.networks, graphs: suite8.graphs, runs: suite8.runs };

    outcomes.push(ba_decline(&data));
    let (o, info) = terminal_correlation_check(&data);
    outcomes.push(o);
    notes.push((4, info));
    outcomes.push(identity_suite());
    let (o, info) = activity_heatmap(&dir("sweep-8"));
    outcomes.push(o);
    notes.push((6, info));
    outcomes.push(long_term_decline(&data));
    outcomes.push(positive_step(&data));
    let (o, info) = convex_equilibrium(&data);
    outcomes.push(o);
    notes.push((9, info));

    // Determinism: the suite and the sweep, repeated and on one worker.
    run_replication_suite(&suite_req(&dir("suite-8b"), 8)).unwrap();
    run_replication_suite(&suite_req(&dir("suite-1"), 1)).unwrap();
    run_sweep(&sweep_request(&dir("sweep-1"), 1)).unwrap();
    let ffn = |out: &str| RunRequest {
        graph: GraphSpec::florentine(),
        sim: SimConfig::new(neg(1.5)).with_node_level(true),
        out: dir(out),
    };
    run_single(&ffn("ffn-a")).unwrap();
    run_single(&ffn("ffn-b")).unwrap();
    let reference = csv_files(&dir("suite-8a"));
    let suite_same = reference == csv_files(&dir("suite-8b")) && reference == csv_files(&dir("suite-1"));
    let sweep_same = csv_files(&dir("sweep-8")) == csv_files(&dir("sweep-1"));
    let single_same = csv_files(&dir("ffn-a")) == csv_files(&dir("ffn-b"));
    outcomes.push(Outcome {
        id: 10,
        name: "Determinism",
        pass: suite_same && sweep_same && single_same && reference.len() == 621,
        detail: format!(
            "suite ({} CSVs) identical across runs and workers {{1, 8}}: {suite_same}; sweep: {sweep_same}; single run: {single_same}",
            reference.len()
        ),
    });

    let g = GraphSpec::erdos_renyi(3000, 200.0, MASTER_SEED).build().unwrap();
    let mut cfg = SimConfig::new(DisparityResponse::linear(1.55).unwrap());
    cfg.convergence_epsilon = 0.0;
    let start = Instant::now();
    let traj = run(&g, &cfg);
    let single_time = start.elapsed();
    outcomes.push(Outcome {
        id: 11,
        name: "Performance",
        pass: single_time < Duration::from_secs(2) && suite_time < Duration::from_secs(900),
        detail: format!(
            "3000-node degree-200 run ({} steps) {} (limit 2 s); full suite of {} runs with 8 workers {} (limit 15 min); {} CPUs available",
            traj.terminal_step,
            secs(single_time),
            data.runs.len(),
            secs(suite_time),
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        ),
    });

    println!();
    println!("acceptance criteria (master seed {MASTER_SEED})");
    for o in &outcomes {
        println!("[{}] {:>2}. {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.name, o.detail);
        for (_, note) in notes.iter().filter(|(id, _)| *id == o.id) {
            println!("           note: {note}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
