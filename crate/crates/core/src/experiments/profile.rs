//! Capacity profile across distance: simulated bins next to closed forms.

use serde::{Deserialize, Serialize};

use super::output::config_hash;
use crate::analytic::capacity_scf;
use crate::config::NetworkConfig;
use crate::simcore::AggregateReport;
use crate::stats::Summary;

/// One distance bin, flattened for CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub seed: u64,
    pub config_hash: String,
    pub trials: usize,
    pub bin: usize,
    pub lo: f64,
    pub hi: f64,
    pub observers: usize,
    pub x: Option<f64>,
    pub regime: Option<String>,
    pub shaded_count: Option<f64>,
    pub shaded_count_se: Option<f64>,
    pub ku_analytic: Option<f64>,
    pub k_return: Option<f64>,
    pub k_maneuver: Option<f64>,
    pub k_maneuver_se: Option<f64>,
    pub coverage: Option<f64>,
    pub coverage_se: Option<f64>,
    pub cell_share_analytic: Option<f64>,
    pub per_node_share: Option<f64>,
    pub per_node_share_analytic: Option<f64>,
    pub mean_wait: Option<f64>,
    pub mean_delay: Option<f64>,
}

fn mean(s: &Summary) -> Option<f64> {
    (s.count > 0).then_some(s.mean)
}

fn se(s: &Summary) -> Option<f64> {
    (s.count > 0).then_some(s.stderr)
}

pub fn profile_rows(cfg: &NetworkConfig, agg: &AggregateReport) -> Vec<ProfileRow> {
    let hash = config_hash(cfg);
    agg.bins
        .iter()
        .map(|b| {
            let point = mean(&b.x).and_then(|x| capacity_scf(cfg, x).ok());
            ProfileRow {
                seed: cfg.seed,
                config_hash: hash.clone(),
                trials: agg.trials,
                bin: b.bin,
                lo: b.lo,
                hi: b.hi,
                observers: b.x.count,
                x: mean(&b.x),
                regime: point.map(|p| format!("{:?}", p.regime)),
                shaded_count: mean(&b.shaded_count),
                shaded_count_se: se(&b.shaded_count),
                ku_analytic: mean(&b.ku_analytic),
                k_return: mean(&b.k_return),
                k_maneuver: mean(&b.k_maneuver),
                k_maneuver_se: se(&b.k_maneuver),
                coverage: mean(&b.coverage),
                coverage_se: se(&b.coverage),
                cell_share_analytic: mean(&b.cell_share_analytic),
                per_node_share: mean(&b.per_node_share),
                per_node_share_analytic: point.and_then(|p| p.per_node_share),
                mean_wait: mean(&b.mean_wait),
                mean_delay: mean(&b.mean_delay),
            }
        })
        .collect()
}
