//! SCF capacity by observer distance.

use serde::{Deserialize, Serialize};

use super::critical::{critical_ranges, CriticalRanges, Regime};
use super::rates::per_hop_rate;
use super::volumes::ku;
use crate::config::NetworkConfig;
use crate::error::{Error, Result};

/// Capacity at one distance. Shares are in units of the per-hop rate R.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityPoint {
    pub x: f64,
    pub regime: Regime,
    /// Expected number of crossing returners per flight period.
    pub ku: f64,
    /// Per-cell share if the neighborhood were continuously covered (always 1).
    pub saturated_cell_share: f64,
    /// Per-cell share pass_time * k_u / T, capped at 1.
    pub sparse_cell_share: f64,
    /// Per-node share; `None` in the transition regime.
    pub per_node_share: Option<f64>,
    /// Per-node shares bracketing the transition regime (sparse, saturated).
    pub bracket: Option<(f64, f64)>,
    /// R1 (3D) or R2 (2D).
    pub rate: f64,
}

impl CapacityPoint {
    /// Per-node rate in absolute units, when a point estimate exists.
    pub fn per_node_rate(&self) -> Option<f64> {
        self.per_node_share.map(|s| s * self.rate)
    }
}

/// Expected per-cell share when returners cross one at a time, uncapped.
pub fn expected_cell_share(cfg: &NetworkConfig, x: f64) -> Result<f64> {
    Ok(cfg.pass_time() * ku(cfg, x)? / cfg.dispatch_window())
}

fn point(cfg: &NetworkConfig, cr: &CriticalRanges, x: f64, rate: f64) -> Result<CapacityPoint> {
    if !(x > 0.0 && x <= cr.radius * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("distance x = {x} outside (0, {}]", cr.radius)));
    }
    let k = ku(cfg, x)?;
    let sparse = expected_cell_share(cfg, x)?.min(1.0);
    let sharing = cfg.population_constant() * cfg.ln_n();
    let regime = cr.classify(x);
    let (per_node_share, bracket) = match regime {
        Regime::WithinCritical => (Some(1.0 / sharing), None),
        Regime::OutsideCritical => (Some(sparse / sharing), None),
        Regime::Transition => (None, Some((sparse / sharing, 1.0 / sharing))),
    };
    Ok(CapacityPoint {
        x,
        regime,
        ku: k,
        saturated_cell_share: 1.0,
        sparse_cell_share: sparse,
        per_node_share,
        bracket,
        rate,
    })
}

/// Capacity of an observer at distance x from the station.
pub fn capacity_scf(cfg: &NetworkConfig, x: f64) -> Result<CapacityPoint> {
    let cr = critical_ranges(cfg)?;
    point(cfg, &cr, x, per_hop_rate(cfg)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityProfile {
    pub x_grid: Vec<f64>,
    /// Per-node share in units of R; `None` where no point estimate exists.
    pub lambda_scf: Vec<Option<f64>>,
    pub regimes: Vec<Regime>,
    pub points: Vec<CapacityPoint>,
}

pub fn capacity_profile(cfg: &NetworkConfig, xs: &[f64]) -> Result<CapacityProfile> {
    let cr = critical_ranges(cfg)?;
    let rate = per_hop_rate(cfg)?;
    let points = xs.iter().map(|&x| point(cfg, &cr, x, rate)).collect::<Result<Vec<_>>>()?;
    Ok(CapacityProfile {
        x_grid: xs.to_vec(),
        lambda_scf: points.iter().map(|p| p.per_node_share).collect(),
        regimes: points.iter().map(|p| p.regime).collect(),
        points,
    })
}

/// `count` evenly spaced distances in (0, radius].
pub fn distance_grid(radius: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| radius * i as f64 / count as f64).collect()
}
