//! Monte Carlo engine: schedules, encounter detection, SCF accounting,
//! mobility maneuvers and the multi-hop baseline.

mod index;
mod ledger;
mod multihop;
mod observers;
mod population;
mod report;
mod schedule;
mod trial;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ledger::{credit_encounters, exact_mean_wait, CreditedInterval, ScfLedger};
pub use multihop::{multihop_from_positions, run_multihop_baseline, MultihopReport};
pub use observers::{place_observers, Observer};
pub use population::{ObserverOutcome, Population, RawEvent};
pub use report::{aggregate, AggregateBin, AggregateReport, BinStats, GapWindow, ObserverRecord, SimReport};
pub use schedule::{build_schedule, travel_time, Schedule, ScheduleEntry};
pub use trial::{run_mobility_trial, run_scf_trial, run_trials, TrialKind};
pub(crate) use trial::with_pool;

/// Which UAVs take part as returners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionMode {
    /// Only UAVs inside the inscribed hemisphere (3D) or disk (2D) of radius s.
    Inscribed,
    /// Every UAV in the cube or square.
    Full,
}

/// When a UAV leaves its monitor position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReturnTiming {
    /// Arrive at the station exactly when the battery is spent.
    EnergyExhaustion,
    /// Arrive this many seconds before the battery is spent.
    Slack { slack_s: f64 },
}

/// Which UAVs fly the mobility maneuver when J > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManeuverPolicy {
    /// UAVs farther than x1* from the station.
    OutsideCritical,
    All,
}

/// Where observers come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Synthetic locations, stratified over distance bins.
    Stratified,
    /// UAVs drawn at random from the sampled network.
    Population,
}

/// Observer sampling plan. Distance bins split (0, radius] evenly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObserverPlan {
    pub bins: usize,
    /// Observers per bin (stratified) or in total divided by bins (population).
    pub per_bin: usize,
    pub placement: Placement,
    /// Restrict stratified observers to distances in this range (meters).
    pub range: Option<(f64, f64)>,
    /// Keep the whole neighborhood above the ground (z >= r) unless it contains
    /// the station, 3D only.
    pub ground_clearance: bool,
    /// Keep observers far enough from the walls that maneuver sweeps are never shifted.
    pub maneuver_clearance: bool,
}

impl Default for ObserverPlan {
    fn default() -> Self {
        Self {
            bins: 10,
            per_bin: 4,
            placement: Placement::Stratified,
            range: None,
            ground_clearance: true,
            maneuver_clearance: false,
        }
    }
}

/// Simulation switches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimOptions {
    pub region: RegionMode,
    /// Flight periods simulated; the first is discarded as warm-up.
    pub periods: usize,
    pub return_timing: ReturnTiming,
    pub maneuver_policy: ManeuverPolicy,
    pub observers: ObserverPlan,
    /// Expected number of Poisson data instants per observer.
    pub delay_samples: usize,
    /// Keep inter-return gaps for every observer.
    pub record_gaps: bool,
    /// Route the sampled network through the multi-hop baseline as well.
    pub multihop: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            region: RegionMode::Inscribed,
            periods: 3,
            return_timing: ReturnTiming::EnergyExhaustion,
            maneuver_policy: ManeuverPolicy::OutsideCritical,
            observers: ObserverPlan::default(),
            delay_samples: 200,
            record_gaps: false,
            multihop: true,
        }
    }
}

impl SimOptions {
    pub fn validate(&self) -> Result<()> {
        if self.periods < 3 {
            return Err(Error::InvalidConfig(format!(
                "need at least 3 simulated periods (one is warm-up), got {}",
                self.periods
            )));
        }
        if self.observers.bins == 0 || self.observers.per_bin == 0 {
            return Err(Error::InvalidConfig("observer plan needs bins >= 1 and per_bin >= 1".into()));
        }
        if let Some((lo, hi)) = self.observers.range {
            if !(lo >= 0.0 && hi > lo) {
                return Err(Error::InvalidConfig(format!("observer range ({lo}, {hi}) is empty")));
            }
        }
        if let ReturnTiming::Slack { slack_s } = self.return_timing {
            if !(slack_s.is_finite() && slack_s >= 0.0) {
                return Err(Error::InvalidConfig(format!("return slack must be nonnegative, got {slack_s}")));
            }
        }
        if self.delay_samples == 0 {
            return Err(Error::InvalidConfig("delay_samples must be at least 1".into()));
        }
        Ok(())
    }
}
