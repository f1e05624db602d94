use log::warn;
use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ObserverPlan, Placement};
use crate::config::{Dimension, NetworkConfig};
use crate::geometry::{sample_direction_2d, sample_direction_3d, Point, Uav};
use crate::rng::{stream, Purpose};

/// A stationary UAV whose neighborhood is watched for returners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observer {
    pub id: usize,
    pub position: Point,
    /// Distance to the station (3D) or to the plane center (2D).
    pub x: f64,
    pub bin: usize,
    /// Index of the sampled UAV this observer is, if any. It is never its own returner.
    pub uav: Option<usize>,
}

const MAX_ATTEMPTS: usize = 100_000;

/// Distance from the station (3D) or plane center (2D).
pub(crate) fn station_distance(cfg: &NetworkConfig, p: Point) -> f64 {
    match cfg.dim {
        Dimension::ThreeD => p.norm(),
        Dimension::TwoD => p.planar_norm(),
    }
}

fn bin_edges(plan: &ObserverPlan, radius: f64) -> (f64, f64) {
    plan.range.unwrap_or((0.0, radius))
}

/// Bin of distance `x`, or `None` outside the plan's range.
pub(crate) fn bin_of(plan: &ObserverPlan, radius: f64, x: f64) -> Option<usize> {
    let (lo, hi) = bin_edges(plan, radius);
    if !(x > lo && x <= hi) {
        return None;
    }
    let b = ((x - lo) / (hi - lo) * plan.bins as f64).ceil() as usize;
    Some(b.clamp(1, plan.bins) - 1)
}

fn admissible(cfg: &NetworkConfig, plan: &ObserverPlan, p: Point, r: f64, j: f64) -> bool {
    let s = cfg.s;
    let inside = p.x.abs() <= s && p.y.abs() <= s;
    match cfg.dim {
        Dimension::ThreeD => {
            let mut ok = inside && p.z >= 0.0 && p.z <= s;
            // neighborhoods that contain the station cannot clear the ground
            if plan.ground_clearance && p.norm() > r {
                ok &= p.z >= r;
            }
            if plan.maneuver_clearance {
                ok &= p.z >= j + r && p.z <= s - j - r && p.x.abs() <= s - r && p.y.abs() <= s - r;
            }
            ok
        }
        Dimension::TwoD => {
            let mut ok = inside;
            if plan.maneuver_clearance {
                ok &= p.x.abs() <= s - j - r && p.y.abs() <= s - r;
            }
            ok
        }
    }
}

/// Observers for one trial. Stratified observers are synthetic points whose
/// distance follows the population density inside each bin; population
/// observers are sampled UAVs from `candidates` (indices into `uavs`).
pub fn place_observers(
    cfg: &NetworkConfig,
    plan: &ObserverPlan,
    trial: u64,
    uavs: &[Uav],
    candidates: &[usize],
    j: f64,
) -> Vec<Observer> {
    let mut rng = stream(cfg.seed, trial, Purpose::Observers);
    let radius = cfg.radius();
    let r = cfg.neighborhood_radius();
    match plan.placement {
        Placement::Stratified => {
            let (lo, hi) = bin_edges(plan, radius);
            let width = (hi - lo) / plan.bins as f64;
            // distance density grows like x^2 (3D) or x (2D)
            let power = match cfg.dim {
                Dimension::ThreeD => 3,
                Dimension::TwoD => 2,
            };
            let mut out = Vec::with_capacity(plan.bins * plan.per_bin);
            for bin in 0..plan.bins {
                let (a, b) = (lo + width * bin as f64, lo + width * (bin + 1) as f64);
                let (fa, fb) = (a.powi(power), b.powi(power));
                let mut placed = 0;
                let mut attempts = 0;
                while placed < plan.per_bin && attempts < MAX_ATTEMPTS {
                    attempts += 1;
                    let w: f64 = rng.random_range(0.0..1.0);
                    let x = (fa + w * (fb - fa)).powf(1.0 / power as f64).max(f64::MIN_POSITIVE);
                    let position = match cfg.dim {
                        Dimension::ThreeD => sample_direction_3d(&mut rng) * x,
                        Dimension::TwoD => {
                            let d = sample_direction_2d(&mut rng) * x;
                            Point::new(d.x, d.y, cfg.h)
                        }
                    };
                    if admissible(cfg, plan, position, r, j) {
                        out.push(Observer { id: out.len(), position, x, bin, uav: None });
                        placed += 1;
                    }
                }
                if placed < plan.per_bin {
                    warn!("distance bin ({a:.4}, {b:.4}] admits only {placed} of {} observers", plan.per_bin);
                }
            }
            out
        }
        Placement::Population => {
            let want = (plan.bins * plan.per_bin).min(candidates.len());
            let mut picked: Vec<usize> = index::sample(&mut rng, candidates.len(), want).into_vec();
            picked.sort_unstable();
            picked
                .into_iter()
                .filter_map(|k| {
                    let u = &uavs[candidates[k]];
                    let x = station_distance(cfg, u.position);
                    bin_of(plan, radius, x).map(|bin| (u, x, bin))
                })
                .enumerate()
                .map(|(id, (u, x, bin))| Observer { id, position: u.position, x, bin, uav: Some(u.id) })
                .collect()
        }
    }
}
