//! Closed-form capacity, delay and threshold expressions.

pub mod capacity;
pub mod critical;
pub mod delay;
pub mod gap;
pub mod mobility;
pub mod numerics;
pub mod orderstats;
pub mod rates;
pub mod volumes;

use serde::{Deserialize, Serialize};

pub use capacity::{capacity_profile, capacity_scf, distance_grid, expected_cell_share, CapacityPoint, CapacityProfile};
pub use critical::{
    critical_range_2d, critical_range_3d, critical_ranges, gamma_value, k_threshold, u_value, x2_star,
    CriticalRanges, CriticalRoot, Regime,
};
pub use delay::{delay_bound, delay_bound_2d, delay_bound_3d, delay_position_pdf, DelayBound, DelayEstimates};
pub use gap::capacity_gap_g;
pub use mobility::{mobility_encounters, n_of_j, MobilityPrediction};
pub use orderstats::{interval_cdf, interval_mean, interval_pdf, prob_multi_pass};
pub use rates::{multihop_capacity_2d, per_hop_rate, per_hop_rate_2d, per_hop_rate_3d};
pub use volumes::{ku, ku_2d, ku_3d, sector_area_2d, sector_volume_3d, shaded_area_2d, shaded_volume_3d, Measure};

use crate::config::NetworkConfig;
use crate::error::Result;

/// Every closed-form quantity for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub config: NetworkConfig,
    pub cell_side: f64,
    pub neighborhood_radius: f64,
    pub pass_time: f64,
    pub per_hop_rate: f64,
    pub critical: CriticalRanges,
    /// |closed form - bisection| / bisection for x1*, when the closed form is real.
    pub x1_relative_disagreement: Option<f64>,
    pub capacity: CapacityProfile,
    pub delay: DelayEstimates,
    pub mobility: Vec<MobilityPrediction>,
    pub multihop_per_node: f64,
}

/// Report with `profile_points` evenly spaced distances and N(J) at each of `j_values`.
pub fn analytic_report(cfg: &NetworkConfig, profile_points: usize, j_values: &[f64]) -> Result<AnalyticReport> {
    cfg.validate()?;
    let critical = critical_ranges(cfg)?;
    let disagreement = critical
        .x1_closed_form
        .map(|cf| (cf - critical.x1_bisection).abs() / critical.x1_bisection);
    let rate = per_hop_rate(cfg)?;
    Ok(AnalyticReport {
        config: cfg.clone(),
        cell_side: cfg.cell_side(),
        neighborhood_radius: cfg.neighborhood_radius(),
        pass_time: cfg.pass_time(),
        per_hop_rate: rate,
        x1_relative_disagreement: disagreement,
        capacity: capacity_profile(cfg, &distance_grid(cfg.radius(), profile_points))?,
        delay: delay_bound(cfg)?,
        mobility: j_values.iter().map(|&j| mobility_encounters(cfg, j)).collect::<Result<_>>()?,
        multihop_per_node: rates::multihop_per_node(rate, cfg.n),
        critical,
    })
}
