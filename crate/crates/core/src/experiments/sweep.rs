//! Parameter sweeps with analytic and simulated columns side by side.

use std::path::PathBuf;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::output::config_hash;
use super::scaling::{fit_scaling, ScalingFit};
use crate::analytic::{critical_ranges, delay_bound, per_hop_rate};
use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};
use crate::simcore::{run_mobility_trial, run_scf_trial, SimOptions, SimReport, TrialKind};
use crate::stats::{summarize, Summary};

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    N,
    T0,
    V,
    S,
    J,
    Alpha,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::N => "n",
            SweepVariable::T0 => "t0",
            SweepVariable::V => "v",
            SweepVariable::S => "s",
            SweepVariable::J => "j",
            SweepVariable::Alpha => "alpha",
        }
    }

    /// `base` with this variable set to `value`.
    pub fn apply(self, base: &NetworkConfig, value: f64) -> Result<NetworkConfig> {
        let mut cfg = base.clone();
        match self {
            SweepVariable::N => {
                if !(value >= 2.0 && value.fract() == 0.0 && value <= u64::MAX as f64) {
                    return Err(Error::InvalidConfig(format!("sweep value n = {value} is not an integer >= 2")));
                }
                cfg.n = value as u64;
            }
            SweepVariable::T0 => cfg.t0 = value,
            SweepVariable::V => cfg.v = value,
            SweepVariable::S => cfg.s = value,
            SweepVariable::J => cfg.j = value,
            SweepVariable::Alpha => cfg.alpha = value,
        }
        Ok(cfg)
    }
}

/// Simulated quantities a sweep can regress against n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    MeanWait,
    MeanDelay,
    Coverage,
    PerNodeShare,
    /// SCF per-node rate over the multi-hop per-node rate.
    ScfToMultihop,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::MeanWait => "mean_wait",
            Metric::MeanDelay => "mean_delay",
            Metric::Coverage => "coverage",
            Metric::PerNodeShare => "per_node_share",
            Metric::ScfToMultihop => "scf_to_multihop",
        }
    }

    /// Power of log n divided out before fitting: the waiting term scales
    /// like (log n / n)^(1/3) in 3D and (log n / n)^(1/2) in 2D, the SCF to
    /// multi-hop ratio like n / log n.
    pub fn log_power(self, dim: Dimension) -> f64 {
        match (self, dim) {
            (Metric::MeanWait, Dimension::ThreeD) => 1.0 / 3.0,
            (Metric::MeanWait, Dimension::TwoD) => 0.5,
            (Metric::ScfToMultihop, _) => -1.0,
            _ => 0.0,
        }
    }

    fn of(self, row: &SweepRow) -> Option<f64> {
        match self {
            Metric::MeanWait => row.mean_wait,
            Metric::MeanDelay => row.mean_delay,
            Metric::Coverage => row.coverage,
            Metric::PerNodeShare => row.per_node_share,
            Metric::ScfToMultihop => row.scf_to_multihop,
        }
    }
}

fn one() -> u64 {
    1
}

/// A sweep study as read from a spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    /// Grid values, strictly increasing, in the variable's SI unit.
    pub values: Vec<f64>,
    #[serde(default = "one")]
    pub trials: u64,
    /// Metrics regressed against n when the variable is n.
    #[serde(default)]
    pub metrics: Vec<Metric>,
    /// Output directory; the command line `--out` wins when given.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub kind: TrialKind,
    #[serde(default)]
    pub options: SimOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidConfig("sweep grid is empty".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("sweep grid has a non-finite value".into()));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig("sweep grid must be strictly increasing".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        self.options.validate()
    }
}

/// One grid point. Missing values are empty cells in CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub variable: String,
    pub value: f64,
    pub seed: u64,
    pub config_hash: String,
    pub trials: u64,
    /// `ok` or `infeasible`.
    pub status: String,
    pub message: String,
    pub x1_star: Option<f64>,
    pub x2_star: Option<f64>,
    pub k_th: Option<f64>,
    pub per_hop_rate: Option<f64>,
    pub delay_bound: Option<f64>,
    pub wait_bound: Option<f64>,
    pub multihop_per_node_analytic: Option<f64>,
    pub coverage: Option<f64>,
    pub coverage_se: Option<f64>,
    pub per_node_share: Option<f64>,
    pub per_node_share_se: Option<f64>,
    pub per_node_rate: Option<f64>,
    pub mean_wait: Option<f64>,
    pub mean_wait_se: Option<f64>,
    pub mean_delay: Option<f64>,
    pub mean_delay_se: Option<f64>,
    pub scf_to_multihop: Option<f64>,
    pub scf_to_multihop_se: Option<f64>,
}

impl SweepRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub fits: Vec<ScalingFit>,
}

fn mean_of(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = xs.collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn split(s: Summary) -> (Option<f64>, Option<f64>) {
    if s.count == 0 {
        (None, None)
    } else {
        (Some(s.mean), Some(s.stderr))
    }
}

fn analytic_row(spec: &SweepSpec, value: f64, cfg: &NetworkConfig) -> Result<SweepRow> {
    cfg.validate()?;
    let cr = critical_ranges(cfg)?;
    let rate = per_hop_rate(cfg)?;
    let delay = delay_bound(cfg)?;
    Ok(SweepRow {
        variable: spec.variable.name().to_string(),
        value,
        seed: cfg.seed,
        config_hash: config_hash(cfg),
        trials: spec.trials,
        status: "ok".into(),
        message: String::new(),
        x1_star: Some(cr.x1_star),
        x2_star: cr.x2_star,
        k_th: Some(cr.k_th),
        per_hop_rate: Some(rate),
        delay_bound: Some(delay.closed_form.total),
        wait_bound: Some(delay.closed_form.waiting_term),
        multihop_per_node_analytic: Some(rate / cfg.n as f64),
        coverage: None,
        coverage_se: None,
        per_node_share: None,
        per_node_share_se: None,
        per_node_rate: None,
        mean_wait: None,
        mean_wait_se: None,
        mean_delay: None,
        mean_delay_se: None,
        scf_to_multihop: None,
        scf_to_multihop_se: None,
    })
}

fn flagged(spec: &SweepSpec, value: f64, cfg: Option<&NetworkConfig>, err: &Error) -> SweepRow {
    warn!("sweep point {} = {value} flagged: {err}", spec.variable.name());
    SweepRow {
        variable: spec.variable.name().to_string(),
        value,
        seed: cfg.map_or(0, |c| c.seed),
        config_hash: cfg.map(config_hash).unwrap_or_default(),
        trials: spec.trials,
        status: "infeasible".into(),
        message: err.to_string(),
        x1_star: None,
        x2_star: None,
        k_th: None,
        per_hop_rate: None,
        delay_bound: None,
        wait_bound: None,
        multihop_per_node_analytic: None,
        coverage: None,
        coverage_se: None,
        per_node_share: None,
        per_node_share_se: None,
        per_node_rate: None,
        mean_wait: None,
        mean_wait_se: None,
        mean_delay: None,
        mean_delay_se: None,
        scf_to_multihop: None,
        scf_to_multihop_se: None,
    }
}

fn fill_simulated(row: &mut SweepRow, cfg: &NetworkConfig, reports: &[SimReport]) {
    let rate = row.per_hop_rate.unwrap_or(f64::NAN);
    let per_trial = |f: &dyn Fn(&SimReport) -> Option<f64>| summarize(&reports.iter().filter_map(f).collect::<Vec<_>>());
    let coverage = per_trial(&|r| mean_of(r.records.iter().map(|o| o.coverage)));
    let share = per_trial(&|r| mean_of(r.records.iter().map(|o| o.per_node_share)));
    let ratio = per_trial(&|r| {
        let mh = r.multihop.as_ref().map_or(rate / cfg.n as f64, |m| m.per_node_rate);
        mean_of(r.records.iter().map(|o| o.per_node_share)).map(|s| s * rate / mh)
    });
    (row.coverage, row.coverage_se) = split(coverage);
    (row.per_node_share, row.per_node_share_se) = split(share);
    row.per_node_rate = row.per_node_share.map(|s| s * rate);
    (row.mean_wait, row.mean_wait_se) = split(per_trial(&|r| r.mean_wait));
    (row.mean_delay, row.mean_delay_se) = split(per_trial(&|r| r.mean_delay));
    (row.scf_to_multihop, row.scf_to_multihop_se) = split(ratio);
}

/// Runs every (grid point, trial) pair; rows come back in grid order. A grid
/// point whose configuration is infeasible is flagged, not fatal.
pub fn sweep(spec: &SweepSpec, base: &NetworkConfig) -> Result<SweepTable> {
    spec.validate()?;
    let configs: Vec<(f64, Result<NetworkConfig>)> =
        spec.values.iter().map(|&v| (v, spec.variable.apply(base, v))).collect();
    let mut rows: Vec<SweepRow> = configs
        .iter()
        .map(|(v, cfg)| match cfg {
            Ok(c) => analytic_row(spec, *v, c).unwrap_or_else(|e| flagged(spec, *v, Some(c), &e)),
            Err(e) => flagged(spec, *v, None, e),
        })
        .collect();
    let tasks: Vec<(usize, u64)> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_ok())
        .flat_map(|(i, _)| (0..spec.trials).map(move |t| (i, t)))
        .collect();
    let results: Vec<(usize, Result<SimReport>)> = crate::simcore::with_pool(|| {
        tasks
            .par_iter()
            .map(|&(i, t)| {
                let cfg = configs[i].1.as_ref().expect("feasible row has a config");
                let rep = match spec.kind {
                    TrialKind::Scf => run_scf_trial(cfg, &spec.options, t),
                    TrialKind::Mobility => run_mobility_trial(cfg, &spec.options, t),
                };
                (i, rep)
            })
            .collect()
    })?;
    let mut per_point: Vec<Vec<SimReport>> = vec![Vec::new(); rows.len()];
    let mut failures: Vec<Option<Error>> = (0..rows.len()).map(|_| None).collect();
    for (i, rep) in results {
        match rep {
            Ok(r) => per_point[i].push(r),
            Err(e) => {
                failures[i].get_or_insert(e);
            }
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        if let Some(e) = failures[i].take() {
            let cfg = configs[i].1.as_ref().ok();
            *row = flagged(spec, row.value, cfg, &e);
        } else if row.is_ok() {
            fill_simulated(row, configs[i].1.as_ref().expect("feasible row has a config"), &per_point[i]);
        }
    }
    let fits = fit_rows(spec, base.dim, &rows);
    Ok(SweepTable { spec: spec.clone(), rows, fits })
}

fn fit_rows(spec: &SweepSpec, dim: Dimension, rows: &[SweepRow]) -> Vec<ScalingFit> {
    if spec.variable != SweepVariable::N {
        return Vec::new();
    }
    spec.metrics
        .iter()
        .filter_map(|&m| {
            let (ns, ys): (Vec<f64>, Vec<f64>) =
                rows.iter().filter(|r| r.is_ok()).map(|r| (r.value, m.of(r).unwrap_or(f64::NAN))).unzip();
            match fit_scaling(m.name(), &ns, &ys, m.log_power(dim)) {
                Ok(f) => Some(f),
                Err(e) => {
                    warn!("no fit for {}: {e}", m.name());
                    None
                }
            }
        })
        .collect()
}
