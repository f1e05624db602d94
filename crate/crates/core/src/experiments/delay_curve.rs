//! Mean SCF delay against network size.

use serde::{Deserialize, Serialize};

use super::output::config_hash;
use crate::analytic::delay::{carry_term, delay_bound};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::simcore::{run_trials, ObserverPlan, Placement, SimOptions, TrialKind};
use crate::stats::{spearman, summarize, RankCorrelation};

/// Delay-curve study as read from a spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DelayCurveSpec {
    /// Network sizes, strictly increasing.
    pub ns: Vec<u64>,
    pub trials: u64,
    pub options: SimOptions,
}

impl Default for DelayCurveSpec {
    fn default() -> Self {
        Self {
            ns: (12..=20).step_by(2).map(|e| 1u64 << e).collect(),
            trials: 20,
            options: delay_options(),
        }
    }
}

/// Observers drawn from the UAV population, so pooled delays average over
/// uniformly placed sources.
pub fn delay_options() -> SimOptions {
    SimOptions {
        observers: ObserverPlan { placement: Placement::Population, bins: 1, per_bin: 200, ..Default::default() },
        delay_samples: 20,
        multihop: false,
        ..Default::default()
    }
}

impl DelayCurveSpec {
    pub fn validate(&self) -> Result<()> {
        if self.ns.len() < 2 {
            return Err(Error::InvalidConfig("delay curve needs at least two network sizes".into()));
        }
        if self.ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig("delay curve sizes must be strictly increasing".into()));
        }
        let decades = (self.ns[self.ns.len() - 1] as f64 / self.ns[0] as f64).log10();
        if decades < 2.0 {
            return Err(Error::InvalidConfig(format!("delay curve sizes span {decades:.2} decades, need at least 2")));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        self.options.validate()
    }
}

/// One size, or the asymptote reference row (`kind = "asymptote"`, no n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayRow {
    pub kind: String,
    pub n: Option<u64>,
    pub seed: u64,
    pub config_hash: String,
    pub trials: u64,
    pub mean_delay: Option<f64>,
    pub mean_delay_se: Option<f64>,
    pub mean_wait: Option<f64>,
    pub mean_wait_se: Option<f64>,
    /// Share of data instants with no returner before the horizon.
    pub censored_fraction: Option<f64>,
    pub carry_analytic: f64,
    pub bound_total: Option<f64>,
    pub bound_wait: Option<f64>,
    pub quadrature_total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayCurve {
    pub rows: Vec<DelayRow>,
    /// (3/4)L/v in 3D, 2K/(3v) + h/v in 2D.
    pub asymptote: f64,
    /// Rank correlation of simulated delay against n.
    pub trend: RankCorrelation,
}

impl DelayCurve {
    pub fn simulated(&self) -> impl Iterator<Item = &DelayRow> {
        self.rows.iter().filter(|r| r.kind == "simulated")
    }
}

/// Simulated mean delay and the analytic bound for each n.
pub fn delay_curve(base: &NetworkConfig, spec: &DelayCurveSpec) -> Result<DelayCurve> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.ns.len() + 1);
    for &n in &spec.ns {
        let cfg = NetworkConfig { n, ..base.clone() };
        let bound = delay_bound(&cfg)?;
        let reports = run_trials(&cfg, &spec.options, TrialKind::Scf, spec.trials)?;
        let delay = summarize(&reports.iter().filter_map(|r| r.mean_delay).collect::<Vec<_>>());
        let wait = summarize(&reports.iter().filter_map(|r| r.mean_wait).collect::<Vec<_>>());
        let served: usize = reports.iter().flat_map(|r| &r.records).map(|o| o.delay_samples).sum();
        let censored: usize = reports.iter().map(|r| r.censored).sum();
        let total = served + censored;
        let some = |s: &crate::stats::Summary, v: f64| (s.count > 0).then_some(v);
        rows.push(DelayRow {
            kind: "simulated".into(),
            n: Some(n),
            seed: cfg.seed,
            config_hash: config_hash(&cfg),
            trials: spec.trials,
            mean_delay: some(&delay, delay.mean),
            mean_delay_se: some(&delay, delay.stderr),
            mean_wait: some(&wait, wait.mean),
            mean_wait_se: some(&wait, wait.stderr),
            censored_fraction: (total > 0).then(|| censored as f64 / total as f64),
            carry_analytic: carry_term(&cfg),
            bound_total: Some(bound.closed_form.total),
            bound_wait: Some(bound.closed_form.waiting_term),
            quadrature_total: Some(bound.quadrature.total),
        });
    }
    let asymptote = carry_term(base);
    rows.push(DelayRow {
        kind: "asymptote".into(),
        n: None,
        seed: base.seed,
        config_hash: config_hash(base),
        trials: 0,
        mean_delay: None,
        mean_delay_se: None,
        mean_wait: None,
        mean_wait_se: None,
        censored_fraction: None,
        carry_analytic: asymptote,
        bound_total: None,
        bound_wait: None,
        quadrature_total: None,
    });
    let (ns, ds): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter_map(|r| Some((r.n? as f64, r.mean_delay?)))
        .unzip();
    let trend = spearman(&ns, &ds);
    Ok(DelayCurve { rows, asymptote, trend })
}
