use serde::{Deserialize, Serialize};

use super::multihop::MultihopReport;
use super::population::ObserverOutcome;
use super::SimOptions;
use crate::analytic::{expected_cell_share, ku, Regime};
use crate::config::NetworkConfig;
use crate::stats::{summarize, Summary};

pub type BinStats = Summary;

/// Flat per-observer row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverRecord {
    pub trial: u64,
    pub observer: usize,
    pub x: f64,
    pub bin: usize,
    pub regime: Option<Regime>,
    pub interior: bool,
    pub shaded_count: usize,
    /// Closed-form expected crossing count at this distance.
    pub ku_analytic: Option<f64>,
    pub k_return: usize,
    pub k_maneuver: usize,
    pub coverage: f64,
    /// Closed-form one-at-a-time cell share, capped at 1.
    pub cell_share_analytic: Option<f64>,
    pub cell_population: u32,
    pub per_node_share: f64,
    pub handoffs: usize,
    pub mean_wait_exact: Option<f64>,
    pub mean_wait_sampled: Option<f64>,
    pub mean_delay: Option<f64>,
    pub delay_samples: usize,
    pub censored: usize,
}

impl ObserverRecord {
    pub fn from_outcome(cfg: &NetworkConfig, trial: u64, o: &ObserverOutcome) -> Self {
        let x = o.observer.x;
        let in_range = x > 0.0 && x <= cfg.radius();
        let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
        Self {
            trial,
            observer: o.observer.id,
            x,
            bin: o.observer.bin,
            regime: o.regime,
            interior: o.interior,
            shaded_count: o.shaded_count,
            ku_analytic: in_range.then(|| ku(cfg, x).ok()).flatten(),
            k_return: o.k_return,
            k_maneuver: o.k_maneuver,
            coverage: o.coverage,
            cell_share_analytic: in_range.then(|| expected_cell_share(cfg, x).ok().map(|s| s.min(1.0))).flatten(),
            cell_population: o.cell_population,
            per_node_share: o.per_node_share,
            handoffs: o.ledger.handoffs,
            mean_wait_exact: o.mean_wait_exact,
            mean_wait_sampled: mean(&o.ledger.wait_samples),
            mean_delay: mean(&o.ledger.delivery_delays),
            delay_samples: o.ledger.delivery_delays.len(),
            censored: o.ledger.censored,
        }
    }
}

/// Inter-entry gaps seen by one observer over one period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapWindow {
    pub trial: u64,
    pub observer: usize,
    pub x: f64,
    /// Entries in the period, so `gaps.len() == k - 1`.
    pub k: usize,
    pub window: f64,
    pub gaps: Vec<f64>,
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub seed: u64,
    pub trial: u64,
    pub config: NetworkConfig,
    pub options: SimOptions,
    pub returners: usize,
    pub maneuvering: usize,
    /// Mean monitoring time given up by a maneuvering UAV, seconds.
    pub monitoring_loss: Option<f64>,
    /// Largest deviation of a single UAV's loss from 2J/v, seconds.
    pub monitoring_loss_error: Option<f64>,
    /// Closed-form maneuver crossings per neighborhood, when J > 0.
    pub n_j_analytic: Option<f64>,
    pub records: Vec<ObserverRecord>,
    pub gaps: Vec<GapWindow>,
    /// Pooled delivery delay over all observers' data instants, seconds.
    pub mean_delay: Option<f64>,
    /// Pooled waiting time for the next returner, seconds.
    pub mean_wait: Option<f64>,
    /// Data instants with no returner before the horizon.
    pub censored: usize,
    pub multihop: Option<MultihopReport>,
    pub bins: Vec<AggregateBin>,
}

/// Per-bin statistics over observers (and trials).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateBin {
    pub bin: usize,
    pub lo: f64,
    pub hi: f64,
    pub x: BinStats,
    pub shaded_count: BinStats,
    pub ku_analytic: BinStats,
    pub k_return: BinStats,
    pub k_maneuver: BinStats,
    pub coverage: BinStats,
    pub cell_share_analytic: BinStats,
    pub per_node_share: BinStats,
    pub mean_wait: BinStats,
    pub mean_delay: BinStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub trials: usize,
    pub bins: Vec<AggregateBin>,
    /// Per-trial pooled delays.
    pub mean_delay: BinStats,
    /// Per-trial pooled waits.
    pub mean_wait: BinStats,
    pub multihop_per_node: BinStats,
}

pub(crate) fn bin_table(records: &[&ObserverRecord], bins: usize, lo: f64, hi: f64) -> Vec<AggregateBin> {
    let width = (hi - lo) / bins as f64;
    (0..bins)
        .map(|b| {
            let rows: Vec<&&ObserverRecord> = records.iter().filter(|r| r.bin == b).collect();
            let col = |f: &dyn Fn(&ObserverRecord) -> Option<f64>| -> BinStats {
                summarize(&rows.iter().filter_map(|r| f(r)).collect::<Vec<_>>())
            };
            AggregateBin {
                bin: b,
                lo: lo + width * b as f64,
                hi: lo + width * (b + 1) as f64,
                x: col(&|r| Some(r.x)),
                shaded_count: col(&|r| Some(r.shaded_count as f64)),
                ku_analytic: col(&|r| r.ku_analytic),
                k_return: col(&|r| Some(r.k_return as f64)),
                k_maneuver: col(&|r| Some(r.k_maneuver as f64)),
                coverage: col(&|r| Some(r.coverage)),
                cell_share_analytic: col(&|r| r.cell_share_analytic),
                per_node_share: col(&|r| Some(r.per_node_share)),
                mean_wait: col(&|r| r.mean_wait_exact),
                mean_delay: col(&|r| r.mean_delay),
            }
        })
        .collect()
}

/// Pools trials of the same configuration.
pub fn aggregate(reports: &[SimReport]) -> AggregateReport {
    let Some(first) = reports.first() else {
        return AggregateReport {
            trials: 0,
            bins: Vec::new(),
            mean_delay: summarize(&[]),
            mean_wait: summarize(&[]),
            multihop_per_node: summarize(&[]),
        };
    };
    let plan = &first.options.observers;
    let (lo, hi) = plan.range.unwrap_or((0.0, first.config.radius()));
    let records: Vec<&ObserverRecord> = reports.iter().flat_map(|r| &r.records).collect();
    AggregateReport {
        trials: reports.len(),
        bins: bin_table(&records, plan.bins, lo, hi),
        mean_delay: summarize(&reports.iter().filter_map(|r| r.mean_delay).collect::<Vec<_>>()),
        mean_wait: summarize(&reports.iter().filter_map(|r| r.mean_wait).collect::<Vec<_>>()),
        multihop_per_node: summarize(&reports.iter().filter_map(|r| r.multihop.as_ref().map(|m| m.per_node_rate)).collect::<Vec<_>>()),
    }
}
