//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines always reach the console; exits nonzero on any FAIL.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavscf::analytic::critical::critical_range_3d_closed_form;
use uavscf::analytic::{
    critical_range_2d, critical_range_3d, critical_ranges, delay_bound, interval_cdf, n_of_j, per_hop_rate,
    prob_multi_pass,
};
use uavscf::experiments::{delay_curve, delay_options, fit_scaling, heatmap, normalized, sweep, DelayCurveSpec, SweepSpec, SweepVariable};
use uavscf::simcore::{
    aggregate, run_multihop_baseline, run_trials, ObserverPlan, RegionMode, SimOptions, SimReport, TrialKind,
};
use uavscf::stats::ks_uniform;
use uavscf::{Dimension, NetworkConfig};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

/// Unit region (s = v = 1) with t0 = 3.5 and the chord constants used throughout.
fn unit(dim: Dimension, n: u64, c: f64) -> NetworkConfig {
    NetworkConfig {
        n,
        s: 1.0,
        v: 1.0,
        t0: 3.5,
        h: 0.001,
        dim,
        c0: c,
        c2: c,
        c5: c,
        c9: c,
        c4: 2.0 * 3f64.sqrt(),
        c6: 3.0 * 2f64.sqrt() * PI / 4.0,
        kappa: 3.0 * PI / 4.0,
        ..Default::default()
    }
}

fn banded(range: (f64, f64), bins: usize, per_bin: usize) -> SimOptions {
    SimOptions {
        observers: ObserverPlan { bins, per_bin, range: Some(range), ..Default::default() },
        delay_samples: 1,
        multihop: false,
        ..Default::default()
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(" ")
}

fn critical_cross_check() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst3, mut worst2) = (0f64, 0f64);
    for _ in 0..50 {
        let l: f64 = rng.random_range(0.2..5.0);
        let umax = (27.0 / (4.0 * l.powi(6))).cbrt();
        let u = rng.random_range(1e-3..1.0) * umax;
        let closed = critical_range_3d_closed_form(l, u).expect("real discriminant");
        let root = critical_range_3d(l, u).expect("bracketed root");
        worst3 = worst3.max((closed - root.bisection).abs() / root.bisection);

        let k: f64 = rng.random_range(0.2..5.0);
        let u2: f64 = rng.random_range(1e-3..10.0);
        let quadratic = (-u2 + (u2 * u2 + 4.0 * k * k).sqrt()) / 2.0;
        let r2 = critical_range_2d(k, u2).expect("2d root");
        worst2 = worst2.max((r2.value - quadratic).abs() / quadratic);
    }
    let elapsed = start.elapsed();
    Outcome::new(
        worst3 <= 1e-9 && worst2 <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("3D worst rel {worst3:.2e} (<= 1e-9), 2D worst rel {worst2:.2e} (<= 1e-12), {elapsed:.2?}"),
    )
}

fn shaded_ratios(dim: Dimension) -> (bool, String) {
    let cfg = unit(dim, 100_000, 0.001);
    let cr = critical_ranges(&cfg).unwrap();
    let range = (cr.x1_star + cr.neighborhood_radius, 0.95 * cr.radius);
    let reps = run_trials(&cfg, &banded(range, 8, 5), TrialKind::Scf, 100).unwrap();
    let ratios: Vec<f64> = aggregate(&reps).bins.iter().map(|b| b.shaded_count.mean / b.ku_analytic.mean).collect();
    let ok = ratios.iter().all(|r| (r - 1.0).abs() <= 0.10);
    (ok, format!("{dim} x in [{:.3}, {:.3}] count/k_u {}", range.0, range.1, fmt_list(&ratios)))
}

fn encounter_oracle() -> Outcome {
    let start = Instant::now();
    let (ok3, d3) = shaded_ratios(Dimension::ThreeD);
    let (ok2, d2) = shaded_ratios(Dimension::TwoD);
    let elapsed = start.elapsed();
    Outcome::new(ok3 && ok2 && elapsed < Duration::from_secs(120), format!("{d3}; {d2}; {elapsed:.1?}"))
}

fn interval_oracle() -> Outcome {
    let cfg = unit(Dimension::ThreeD, 100_000, 0.001);
    let cr = critical_ranges(&cfg).unwrap();
    let x2 = cr.x2_star.unwrap_or(cr.radius);
    let opts = SimOptions { record_gaps: true, ..banded((cr.x1_star, x2), 8, 5) };
    let reps = run_trials(&cfg, &opts, TrialKind::Scf, 4).unwrap();
    let pass = cfg.pass_time();
    let k_th = cfg.dispatch_window() / pass;
    let (mut pit, mut hits, mut predicted) = (Vec::new(), 0usize, 0.0);
    for w in reps.iter().flat_map(|r| &r.gaps) {
        for &g in &w.gaps {
            pit.push(interval_cdf(g, w.k as f64, w.window));
            hits += usize::from(g <= pass);
            predicted += prob_multi_pass(w.k as f64, k_th);
        }
    }
    let count = pit.len();
    let ks = ks_uniform(&pit);
    let empirical = hits as f64 / count as f64;
    let predicted = predicted / count as f64;
    Outcome::new(
        count >= 10_000 && ks < 0.05 && (empirical - predicted).abs() <= 0.03,
        format!("{count} gaps, KS {ks:.4}; Pr(gap <= pass) {empirical:.4} vs {predicted:.4}"),
    )
}

fn capacity_regimes() -> Outcome {
    let cfg = unit(Dimension::ThreeD, 100_000, 3e-5);
    let cr = critical_ranges(&cfg).unwrap();
    let x2 = cr.x2_star.expect("sparse regime exists");
    let sat = run_trials(&cfg, &banded((0.0, cr.x1_star), 4, 5), TrialKind::Scf, 200).unwrap();
    let sat_cov: Vec<f64> = aggregate(&sat).bins.iter().map(|b| b.coverage.mean).collect();
    let sparse = run_trials(&cfg, &banded((x2, 0.95 * cr.radius), 8, 5), TrialKind::Scf, 200).unwrap();
    let ratios: Vec<f64> =
        aggregate(&sparse).bins.iter().map(|b| b.coverage.mean / b.cell_share_analytic.mean).collect();
    let ok = sat_cov.iter().all(|&c| c >= 0.99) && ratios.iter().all(|r| (r - 1.0).abs() <= 0.20);
    Outcome::new(
        ok,
        format!(
            "x1* {:.4}, x2* {x2:.4}; share/R for x <= x1*: {}; sparse share/closed form: {}",
            cr.x1_star,
            fmt_list(&sat_cov),
            fmt_list(&ratios)
        ),
    )
}

fn delay_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut configs = 0;
    let mut worst_gap = f64::INFINITY;
    while configs < 20 {
        let dim = if rng.random_bool(0.5) { Dimension::ThreeD } else { Dimension::TwoD };
        let cfg = unit(dim, rng.random_range(1_000..10_000_000), rng.random_range(0.001..1.0));
        if cfg.validate().is_err() || cfg.neighborhood_radius() >= cfg.radius() {
            continue;
        }
        let b = delay_bound(&cfg).unwrap();
        worst_gap = worst_gap.min(b.closed_form.total - b.quadrature.total);
        configs += 1;
    }
    let quadrature_ok = worst_gap >= -1e-12;

    let spec = DelayCurveSpec { ns: (12..=20).step_by(2).map(|e| 1u64 << e).collect(), trials: 10, options: delay_options() };
    let mut parts = vec![format!("(a) min bound - quadrature {worst_gap:.2e}")];
    let mut ok = quadrature_ok;
    for (dim, c, target) in [(Dimension::ThreeD, 0.1, -1.0 / 3.0), (Dimension::TwoD, 0.02, -0.5)] {
        let base = unit(dim, 1 << 12, c);
        let curve = delay_curve(&base, &spec).unwrap();
        let sim: Vec<_> = curve.simulated().collect();
        let bounded = sim
            .iter()
            .all(|r| r.mean_delay.unwrap() <= r.bound_total.unwrap() + 3.0 * r.mean_delay_se.unwrap());
        let ns: Vec<f64> = sim.iter().map(|r| r.n.unwrap() as f64).collect();
        let waits: Vec<f64> = sim.iter().map(|r| r.mean_wait.unwrap()).collect();
        let power = if dim == Dimension::ThreeD { 1.0 / 3.0 } else { 0.5 };
        let fit = fit_scaling("mean_wait", &ns, &waits, power).unwrap();
        let slope_ok = (fit.exponent - target).abs() <= 0.07;
        ok &= bounded && slope_ok;
        let last = sim.last().unwrap().mean_delay.unwrap();
        let mut part = format!("{dim}: (b) {} (c) exponent {:.3} vs {target:.3}", if bounded { "ok" } else { "violated" }, fit.exponent);
        if dim == Dimension::ThreeD {
            let near = (last - curve.asymptote).abs() / curve.asymptote;
            ok &= near <= 0.10;
            part += &format!(" (d) delay {last:.4} vs {:.4} ({:.1}%)", curve.asymptote, 100.0 * near);
        }
        parts.push(part);
    }
    Outcome::new(ok, parts.join("; "))
}

fn mobility_control() -> Outcome {
    let j = 0.4;
    let cfg = NetworkConfig { j, ..unit(Dimension::ThreeD, 1 << 20, 0.0292) };
    let cr = critical_ranges(&cfg).unwrap();
    let x2 = cr.x2_star.expect("sparse regime exists");
    let predicted = n_of_j(&cfg, j);
    let plan = |hi: f64| ObserverPlan { bins: 4, per_bin: 5, range: Some((x2, hi)), maneuver_clearance: true, ..Default::default() };
    let full = SimOptions { region: RegionMode::Full, observers: plan(1.3), delay_samples: 1, multihop: false, ..Default::default() };
    let reps = run_trials(&cfg, &full, TrialKind::Mobility, 8).unwrap();
    let counts: Vec<f64> = aggregate(&reps).bins.iter().map(|b| b.k_maneuver.mean / predicted).collect();
    let count_ok = counts.iter().all(|r| (r - 1.0).abs() <= 0.15);

    let inscribed = SimOptions { observers: plan(cr.radius), ..full.clone() };
    let reps_i = run_trials(&cfg, &inscribed, TrialKind::Mobility, 8).unwrap();
    let cov: Vec<f64> = aggregate(&reps_i).bins.iter().map(|b| b.coverage.mean).collect();
    let baseline: Vec<f64> =
        aggregate(&run_trials(&cfg, &inscribed, TrialKind::Scf, 8).unwrap()).bins.iter().map(|b| b.coverage.mean).collect();
    let cov_ok = cov.iter().all(|&c| c >= 0.9);

    let all: Vec<&SimReport> = reps.iter().chain(&reps_i).collect();
    let loss_err = all.iter().filter_map(|r| r.monitoring_loss_error).fold(0f64, f64::max);
    let loss = all[0].monitoring_loss.unwrap_or(f64::NAN);
    let loss_ok = all.iter().all(|r| r.maneuvering > 0 && r.monitoring_loss_error.is_some()) && loss_err <= 1e-9 * cfg.t0;
    Outcome::new(
        count_ok && cov_ok && loss_ok,
        format!(
            "x2* {x2:.4}, N(J) {predicted:.1}; maneuver count/N(J) {}; share with J {} (without {}); loss {loss:.12} s vs 2J/v {:.1}, max dev {loss_err:.1e}",
            fmt_list(&counts),
            fmt_list(&cov),
            fmt_list(&baseline),
            2.0 * j / cfg.v
        ),
    )
}

fn scf_vs_multihop() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for dim in [Dimension::ThreeD, Dimension::TwoD] {
        let spec = SweepSpec {
            variable: SweepVariable::N,
            values: vec![4096.0, 65536.0, 1048576.0],
            trials: 5,
            metrics: Vec::new(),
            output: None,
            kind: TrialKind::Scf,
            options: SimOptions { multihop: true, ..banded((0.0, 0.3), 3, 5) },
        };
        let table = sweep(&spec, &unit(dim, 4096, 1.0)).unwrap();
        let scaled: Vec<f64> = table
            .rows
            .iter()
            .map(|r| r.scf_to_multihop.unwrap_or(f64::NAN) * r.value.ln() / r.value)
            .collect();
        let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0f64), |(a, b), &v| (a.min(v), b.max(v)));
        let stable = lo > 0.0 && hi / lo <= 2.0;
        ok &= stable;
        parts.push(format!("{dim} ratio*ln n/n {} (max/min {:.2})", fmt_list(&scaled), hi / lo));
    }
    for dim in [Dimension::ThreeD, Dimension::TwoD] {
        let cfg = unit(dim, 1 << 16, 1.0);
        let m = run_multihop_baseline(&cfg, 0).unwrap();
        let exact = m.per_node_rate == per_hop_rate(&cfg).unwrap() / cfg.n as f64 && m.bottleneck_flows == m.flows;
        ok &= exact;
        parts.push(format!("{dim} multi-hop per-node = R/n: {exact}"));
    }
    Outcome::new(ok, parts.join("; "))
}

fn heatmaps() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (dim, r, res) in [(Dimension::ThreeD, 0.8, 21), (Dimension::TwoD, 0.5, 41)] {
        let cfg = normalized(&NetworkConfig { n: 1 << 14, dim, ..Default::default() }, 5.0);
        let map = heatmap(&cfg, r, res, 0).unwrap();
        let rho = map.distance_correlation.rho;
        ok &= rho < -0.8;
        parts.push(format!("{dim} r={r}: Spearman {rho:.3}"));
    }
    Outcome::new(ok, parts.join("; "))
}

fn run_cli(args: &[&str], out: &Path, pinned: bool) -> bool {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_uavscf"));
    cmd.args(args).arg("--out").arg(out).env("UAVSCF_THREADS", "2");
    if pinned {
        cmd.env("SOURCE_DATE_EPOCH", "1700000000");
    } else {
        cmd.env_remove("SOURCE_DATE_EPOCH");
    }
    cmd.output().map(|o| o.status.success()).unwrap_or(false)
}

fn dir_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let cfg = unit(Dimension::ThreeD, 4000, 0.05);
    fs::write(dir.join("cfg.json"), serde_json::to_string(&cfg).unwrap()).unwrap();
    fs::write(dir.join("sweep.json"), r#"{"variable": "t0", "values": [3.0, 3.5], "trials": 2}"#).unwrap();
    fs::write(dir.join("heat.json"), r#"{"resolution": 6}"#).unwrap();
    fs::write(dir.join("delay.json"), r#"{"ns": [1000, 10000, 100000], "trials": 2}"#).unwrap();
    let c = dir.join("cfg.json");
    let c = c.to_str().unwrap();
    let path = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let commands: Vec<(&str, Vec<String>)> = vec![
        ("analytic", vec!["analytic".into(), "--config".into(), c.into()]),
        ("simulate", vec!["simulate".into(), "--config".into(), c.into(), "--trials".into(), "3".into(), "--mobility-J".into(), "0.2".into()]),
        ("sweep", vec!["sweep".into(), "--config".into(), c.into(), "--spec".into(), path("sweep.json")]),
        ("heatmap", vec!["heatmap".into(), "--config".into(), c.into(), "--spec".into(), path("heat.json")]),
        ("delay-curve", vec!["delay-curve".into(), "--config".into(), c.into(), "--spec".into(), path("delay.json")]),
    ];
    let mut failed = Vec::new();
    for (name, args) in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = dir.join(format!("out-{name}"));
        let mut runs = Vec::new();
        for pinned in [true, true, false] {
            let _ = fs::remove_dir_all(&out);
            if !run_cli(&args, &out, pinned) {
                failed.push(format!("{name} exited nonzero"));
                break;
            }
            runs.push(dir_files(&out));
        }
        if runs.len() == 3 {
            if runs[0] != runs[1] {
                failed.push(format!("{name} differs between pinned runs"));
            }
            let csv = |r: &Vec<(String, Vec<u8>)>| r.iter().filter(|f| f.0.ends_with(".csv")).cloned().collect::<Vec<_>>();
            if csv(&runs[0]) != csv(&runs[2]) {
                failed.push(format!("{name} tables differ without a pinned clock"));
            }
        }
    }
    Outcome::new(
        failed.is_empty(),
        if failed.is_empty() {
            "all five subcommands byte-identical across reruns".to_string()
        } else {
            failed.join("; ")
        },
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("critical-range cross-check", critical_cross_check),
        ("encounter-count oracle", encounter_oracle),
        ("interval-distribution oracle", interval_oracle),
        ("capacity regimes", capacity_regimes),
        ("delay", delay_checks),
        ("mobility control", mobility_control),
        ("SCF vs multi-hop", scf_vs_multihop),
        ("heatmaps", heatmaps),
        ("determinism", determinism),
    ];
    let only: Option<usize> = std::env::var("UAVSCF_CRITERION").ok().and_then(|v| v.parse().ok());
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        failures += usize::from(!outcome.pass);
        println!(
            "{} criterion {id} ({name}) [{:.1?}]: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            outcome.detail
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
