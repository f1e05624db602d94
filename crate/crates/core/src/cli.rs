//! Command-line front end. Every run writes `manifest.json` into the output
//! directory before any computation, then the study tables and a JSON sidecar.
//!
//! Exit codes: 0 success, 2 invalid configuration or spec, 3 I/O failure,
//! 1 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::info;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analytic::{analytic_report, critical_ranges, CapacityPoint, Regime};
use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};
use crate::experiments::{
    delay_curve, git_describe, heatmap, normalized, profile_rows, sweep, timestamp, write_csv, write_json,
    DelayCurveSpec, HeatmapSpec, Sidecar, StudyClock, SweepSpec,
};
use crate::simcore::{aggregate, run_trials, AggregateReport, SimOptions, SimReport, TrialKind};

#[derive(Debug, Parser)]
#[command(name = "uavscf", version, about = "SCF capacity and delay toolkit for UAV networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form thresholds, capacity profile, delay bounds and N(J).
    Analytic(AnalyticArgs),
    /// Monte Carlo trials of one configuration.
    Simulate(SpecArgs),
    /// A parameter sweep read from a spec file.
    Sweep(SpecArgs),
    /// Potential-returner counts over a grid of locations.
    Heatmap(SpecArgs),
    /// Mean delay against network size.
    DelayCurve(SpecArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analytic(_) => "analytic",
            Command::Simulate(_) => "simulate",
            Command::Sweep(_) => "sweep",
            Command::Heatmap(_) => "heatmap",
            Command::DelayCurve(_) => "delay-curve",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Analytic(a) => &a.common,
            Command::Simulate(a) | Command::Sweep(a) | Command::Heatmap(a) | Command::DelayCurve(a) => &a.common,
        }
    }

    fn spec(&self) -> Option<&Path> {
        match self {
            Command::Analytic(_) => None,
            Command::Simulate(a) | Command::Sweep(a) | Command::Heatmap(a) | Command::DelayCurve(a) => a.spec.as_deref(),
        }
    }
}

/// Flags shared by every subcommand. Flags override the config file.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Network configuration (JSON).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// 3d or 2d.
    #[arg(long)]
    pub dim: Option<Dimension>,
    /// Number of UAVs.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo trials (overrides the --spec value).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Mobility maneuver length in meters.
    #[arg(long = "mobility-J", value_name = "METERS")]
    pub mobility_j: Option<f64>,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "uavscf-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub common: Common,
    /// Evenly spaced distances in the capacity profile.
    #[arg(long, default_value_t = 20)]
    pub profile_points: usize,
    /// Maneuver lengths (meters) to tabulate N(J) for; defaults to s/8, s/4, s/2.
    #[arg(long, value_delimiter = ',')]
    pub j_values: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[command(flatten)]
    pub common: Common,
    /// Study spec (JSON); required for sweep, optional elsewhere.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
}

/// Written before any computation starts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config_path: Option<PathBuf>,
    pub spec_path: Option<PathBuf>,
    pub config: NetworkConfig,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub timestamp: u64,
    pub git_describe: String,
}

/// Reads a JSON file; parse failures are configuration errors naming the file,
/// line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| with_path(e, path))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

fn with_path(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

/// Config file (or defaults) with command-line overrides applied and validated.
pub fn resolve_config(common: &Common) -> Result<NetworkConfig> {
    let mut cfg = match &common.config {
        Some(path) => read_json(path)?,
        None => NetworkConfig::default(),
    };
    if let Some(dim) = common.dim {
        cfg.dim = dim;
    }
    if let Some(n) = common.n {
        cfg.n = n;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(j) = common.mobility_j {
        cfg.j = j;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses arguments, runs the subcommand and returns the process exit code.
pub fn main_entry() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let common = cli.command.common();
    let cfg = resolve_config(common)?;
    if matches!(cli.command, Command::Sweep(_)) && cli.command.spec().is_none() {
        return Err(Error::InvalidConfig("sweep needs --spec".into()));
    }
    fs::create_dir_all(&common.out).map_err(|e| with_path(e, &common.out))?;
    let manifest = RunManifest {
        subcommand: cli.command.name().to_string(),
        config_path: common.config.clone(),
        spec_path: cli.command.spec().map(Path::to_path_buf),
        config: cfg.clone(),
        seed: cfg.seed,
        out_dir: common.out.clone(),
        timestamp: timestamp(),
        git_describe: git_describe().to_string(),
    };
    write_json(&common.out.join("manifest.json"), &manifest)?;
    info!("{} -> {}", manifest.subcommand, common.out.display());
    match &cli.command {
        Command::Analytic(a) => cmd_analytic(&cfg, a),
        Command::Simulate(a) => cmd_simulate(&cfg, a),
        Command::Sweep(a) => cmd_sweep(&cfg, a),
        Command::Heatmap(a) => cmd_heatmap(&cfg, a),
        Command::DelayCurve(a) => cmd_delay_curve(&cfg, a),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"))
}

fn cmd_analytic(cfg: &NetworkConfig, a: &AnalyticArgs) -> Result<()> {
    let clock = StudyClock::start();
    let js = if a.j_values.is_empty() {
        vec![cfg.s / 8.0, cfg.s / 4.0, cfg.s / 2.0]
    } else {
        a.j_values.clone()
    };
    let report = analytic_report(cfg, a.profile_points.max(2), &js)?;
    let cr = &report.critical;
    println!("dimension {}  n {}  cell side {:.6} m  r {:.6} m", cfg.dim, cfg.n, report.cell_side, report.neighborhood_radius);
    println!("k_th {:.4}  u {:.6e}  gamma {:.6e}", cr.k_th, cr.u, cr.gamma);
    println!(
        "x1* {:.6} m (bisection {:.6}, closed form {}, relative disagreement {})",
        cr.x1_star,
        cr.x1_bisection,
        opt(cr.x1_closed_form),
        report.x1_relative_disagreement.map_or_else(|| "-".into(), |d| format!("{d:.2e}"))
    );
    println!("x2* {}", opt(cr.x2_star));
    println!(
        "delay bound {:.6} s (carry {:.6} s, wait {:.6} s)",
        report.delay.closed_form.total, report.delay.closed_form.carry_term, report.delay.closed_form.waiting_term
    );
    if cfg.dim == Dimension::TwoD {
        println!("carry term includes the vertical leg h/v = {:.6} s", cfg.h / cfg.v);
    }
    println!("multi-hop per-node rate {:.6e}", report.multihop_per_node);
    for m in &report.mobility {
        println!("J {:.3} m: N(J) {:.4}, monitoring loss {:.4} s", m.j, m.n_j, m.monitoring_loss);
    }
    let rows: Vec<CapacityRow> = report.capacity.points.iter().map(CapacityRow::from).collect();
    write_csv(&a.common.out.join("profile.csv"), &rows)?;
    write_json(&a.common.out.join("analytic.json"), &Sidecar::new("analytic", cfg, 0, &clock, &report))
}

/// One closed-form profile point, flattened.
#[derive(Debug, Clone, Serialize)]
struct CapacityRow {
    x: f64,
    regime: Regime,
    ku: f64,
    sparse_cell_share: f64,
    per_node_share: Option<f64>,
    bracket_sparse: Option<f64>,
    bracket_saturated: Option<f64>,
    per_node_rate: Option<f64>,
}

impl From<&CapacityPoint> for CapacityRow {
    fn from(p: &CapacityPoint) -> Self {
        Self {
            x: p.x,
            regime: p.regime,
            ku: p.ku,
            sparse_cell_share: p.sparse_cell_share,
            per_node_share: p.per_node_share,
            bracket_sparse: p.bracket.map(|b| b.0),
            bracket_saturated: p.bracket.map(|b| b.1),
            per_node_rate: p.per_node_rate(),
        }
    }
}

/// One trial, flattened.
#[derive(Debug, Clone, Serialize)]
struct TrialRow {
    trial: u64,
    seed: u64,
    returners: usize,
    maneuvering: usize,
    monitoring_loss: Option<f64>,
    monitoring_loss_error: Option<f64>,
    n_j_analytic: Option<f64>,
    mean_delay: Option<f64>,
    mean_wait: Option<f64>,
    censored: usize,
    multihop_per_node: Option<f64>,
    multihop_mean_hops: Option<f64>,
}

/// One inter-entry gap.
#[derive(Debug, Clone, Serialize)]
struct GapRow {
    trial: u64,
    observer: usize,
    x: f64,
    k: usize,
    window: f64,
    index: usize,
    gap: f64,
}

#[derive(Debug, Serialize)]
struct SimulateDetails<'a> {
    kind: TrialKind,
    options: &'a SimOptions,
    aggregate: &'a AggregateReport,
}

fn trial_rows(reports: &[SimReport]) -> Vec<TrialRow> {
    reports
        .iter()
        .map(|r| TrialRow {
            trial: r.trial,
            seed: r.seed,
            returners: r.returners,
            maneuvering: r.maneuvering,
            monitoring_loss: r.monitoring_loss,
            monitoring_loss_error: r.monitoring_loss_error,
            n_j_analytic: r.n_j_analytic,
            mean_delay: r.mean_delay,
            mean_wait: r.mean_wait,
            censored: r.censored,
            multihop_per_node: r.multihop.as_ref().map(|m| m.per_node_rate),
            multihop_mean_hops: r.multihop.as_ref().map(|m| m.mean_hops),
        })
        .collect()
}

fn cmd_simulate(cfg: &NetworkConfig, a: &SpecArgs) -> Result<()> {
    let clock = StudyClock::start();
    let opts: SimOptions = match &a.spec {
        Some(p) => read_json(p)?,
        None => SimOptions::default(),
    };
    opts.validate()?;
    let kind = if cfg.j > 0.0 { TrialKind::Mobility } else { TrialKind::Scf };
    let trials = a.common.trials.unwrap_or(10);
    let reports = run_trials(cfg, &opts, kind, trials)?;
    let agg = aggregate(&reports);
    let out = &a.common.out;
    let records: Vec<_> = reports.iter().flat_map(|r| r.records.iter().cloned()).collect();
    write_csv(&out.join("records.csv"), &records)?;
    write_csv(&out.join("profile.csv"), &profile_rows(cfg, &agg))?;
    write_csv(&out.join("trials.csv"), &trial_rows(&reports))?;
    if opts.record_gaps {
        let gaps: Vec<GapRow> = reports
            .iter()
            .flat_map(|r| &r.gaps)
            .flat_map(|g| {
                g.gaps.iter().enumerate().map(|(index, &gap)| GapRow {
                    trial: g.trial,
                    observer: g.observer,
                    x: g.x,
                    k: g.k,
                    window: g.window,
                    index,
                    gap,
                })
            })
            .collect();
        write_csv(&out.join("gaps.csv"), &gaps)?;
    }
    let details = SimulateDetails { kind, options: &opts, aggregate: &agg };
    write_json(&out.join("simulate.json"), &Sidecar::new("simulate", cfg, trials, &clock, details))?;
    if let Ok(cr) = critical_ranges(cfg) {
        println!("x1* {:.6} m  x2* {}  k_th {:.4}", cr.x1_star, opt(cr.x2_star), cr.k_th);
    }
    println!("{} trials, {} observers", trials, records.len());
    for b in &agg.bins {
        println!(
            "bin [{:.4}, {:.4}]  observers {:4}  shaded {:9.3}  ku {:9.3}  coverage {:.4}  k_maneuver {:8.3}",
            b.lo, b.hi, b.x.count, b.shaded_count.mean, b.ku_analytic.mean, b.coverage.mean, b.k_maneuver.mean
        );
    }
    if agg.mean_delay.count > 0 {
        println!("mean delay {:.6} s (se {:.2e})", agg.mean_delay.mean, agg.mean_delay.stderr);
    }
    Ok(())
}

fn cmd_sweep(cfg: &NetworkConfig, a: &SpecArgs) -> Result<()> {
    let clock = StudyClock::start();
    let path = a.spec.as_deref().ok_or_else(|| Error::InvalidConfig("sweep needs --spec".into()))?;
    let mut spec: SweepSpec = read_json(path)?;
    if let Some(t) = a.common.trials {
        spec.trials = t;
    }
    spec.validate()?;
    let table = sweep(&spec, cfg)?;
    let out = &a.common.out;
    write_csv(&out.join("sweep.csv"), &table.rows)?;
    write_json(&out.join("sweep.json"), &Sidecar::new("sweep", cfg, spec.trials, &clock, &table))?;
    let bad = table.rows.iter().filter(|r| !r.is_ok()).count();
    println!("{} grid points, {} flagged", table.rows.len(), bad);
    if bad == table.rows.len() {
        return Err(Error::Infeasible(format!("all {bad} sweep grid points failed; see sweep.csv")));
    }
    for f in &table.fits {
        println!(
            "{}: exponent {:.4} (se {:.4}, R^2 {:.4}) after dividing (log n)^{:.3}",
            f.metric, f.exponent, f.exponent_stderr, f.r_squared, f.log_power
        );
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct HeatmapDetails<'a> {
    spec: &'a HeatmapSpec,
    radius: f64,
    spearman_rho: f64,
    spearman_p: f64,
}

fn cmd_heatmap(cfg: &NetworkConfig, a: &SpecArgs) -> Result<()> {
    let clock = StudyClock::start();
    let spec: HeatmapSpec = match &a.spec {
        Some(p) => read_json(p)?,
        None => HeatmapSpec::default(),
    };
    spec.validate()?;
    let unit = normalized(cfg, spec.half_width);
    let radius = spec.radius_for(cfg.dim);
    let map = heatmap(&unit, radius, spec.resolution, spec.trial)?;
    let out = &a.common.out;
    write_csv(&out.join("heatmap.csv"), &map.cells())?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(out.join("heatmap_matrix.csv"))?;
    for row in map.matrix_rows() {
        w.serialize(row)?;
    }
    w.flush()?;
    let rc = &map.distance_correlation;
    let details = HeatmapDetails { spec: &spec, radius, spearman_rho: rc.rho, spearman_p: rc.p_value };
    write_json(&out.join("heatmap.json"), &Sidecar::new("heatmap", &unit, 1, &clock, details))?;
    println!(
        "{} locations, radius {radius}, count vs distance Spearman rho {:.4} (p {:.2e})",
        map.counts.len(),
        rc.rho,
        rc.p_value
    );
    Ok(())
}

fn cmd_delay_curve(cfg: &NetworkConfig, a: &SpecArgs) -> Result<()> {
    let clock = StudyClock::start();
    let mut spec: DelayCurveSpec = match &a.spec {
        Some(p) => read_json(p)?,
        None => DelayCurveSpec::default(),
    };
    if let Some(t) = a.common.trials {
        spec.trials = t;
    }
    spec.validate()?;
    let curve = delay_curve(cfg, &spec)?;
    let out = &a.common.out;
    write_csv(&out.join("delay_curve.csv"), &curve.rows)?;
    write_json(&out.join("delay_curve.json"), &Sidecar::new("delay-curve", cfg, spec.trials, &clock, &curve))?;
    for r in curve.simulated() {
        println!(
            "n {:>9}  delay {} s  bound {} s",
            r.n.unwrap_or(0),
            opt(r.mean_delay),
            opt(r.bound_total)
        );
    }
    println!("asymptote {:.6} s", curve.asymptote);
    Ok(())
}
