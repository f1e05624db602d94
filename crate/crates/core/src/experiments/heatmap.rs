//! Potential returners at every grid location.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};
use crate::geometry::{returning_trajectory, sample_network_trial, Phase, Point, Trajectory};
use crate::stats::{spearman, RankCorrelation};

/// Heatmap study settings as read from a spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeatmapSpec {
    /// Neighborhood radius in normalized units; defaults to 0.8 (3D) or 0.5 (2D).
    pub radius: Option<f64>,
    /// Grid points per axis.
    pub resolution: usize,
    /// Half side of the normalized region.
    pub half_width: f64,
    /// Network sample to draw.
    pub trial: u64,
}

impl Default for HeatmapSpec {
    fn default() -> Self {
        Self { radius: None, resolution: 21, half_width: 5.0, trial: 0 }
    }
}

impl HeatmapSpec {
    pub fn radius_for(&self, dim: Dimension) -> f64 {
        self.radius.unwrap_or(match dim {
            Dimension::ThreeD => 0.8,
            Dimension::TwoD => 0.5,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::InvalidConfig(format!("heatmap resolution must be at least 2, got {}", self.resolution)));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidConfig(format!("heatmap half_width must be positive, got {}", self.half_width)));
        }
        if let Some(r) = self.radius {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::InvalidConfig(format!("heatmap radius must be nonnegative, got {r}")));
            }
        }
        Ok(())
    }
}

/// `cfg` with every length (and the speed) scaled so that the half side is `half_width`.
pub fn normalized(cfg: &NetworkConfig, half_width: f64) -> NetworkConfig {
    let k = half_width / cfg.s;
    NetworkConfig { s: half_width, h: cfg.h * k, v: cfg.v * k, j: cfg.j * k, ..cfg.clone() }
}

/// Dense grid of counts. In 3D the index is `(k * ny + j) * nx + i` over
/// x (i), y (j) and height (k); in 2D there is one layer at z = h.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Heatmap {
    pub dim: Dimension,
    pub radius: f64,
    pub resolution: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub zs: Vec<f64>,
    pub counts: Vec<u32>,
    /// Rank correlation of count against distance from the station (3D) or plane center (2D).
    pub distance_correlation: RankCorrelation,
}

/// One CSV row of the long format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapCell {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub distance: f64,
    pub count: u32,
}

impl Heatmap {
    pub fn count(&self, i: usize, j: usize, k: usize) -> u32 {
        self.counts[(k * self.ys.len() + j) * self.xs.len() + i]
    }

    pub fn location(&self, i: usize, j: usize, k: usize) -> Point {
        Point::new(self.xs[i], self.ys[j], self.zs[k])
    }

    pub fn distance(&self, p: Point) -> f64 {
        match self.dim {
            Dimension::ThreeD => p.norm(),
            Dimension::TwoD => p.planar_norm(),
        }
    }

    pub fn cells(&self) -> Vec<HeatmapCell> {
        let mut out = Vec::with_capacity(self.counts.len());
        for k in 0..self.zs.len() {
            for j in 0..self.ys.len() {
                for i in 0..self.xs.len() {
                    let p = self.location(i, j, k);
                    out.push(HeatmapCell {
                        i,
                        j,
                        k,
                        x: p.x,
                        y: p.y,
                        z: p.z,
                        distance: self.distance(p),
                        count: self.count(i, j, k),
                    });
                }
            }
        }
        out
    }

    /// Matrix rows: one per (layer, y index), counts along x.
    pub fn matrix_rows(&self) -> Vec<Vec<u32>> {
        self.counts.chunks(self.xs.len()).map(<[u32]>::to_vec).collect()
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn crosses(t: &Trajectory, c: Point, r: f64) -> bool {
    t.segments
        .iter()
        .filter(|s| s.phase != Phase::Monitor)
        .any(|s| crate::geometry::chord_params(s.start, s.end, c, r).is_some())
}

/// Counts, at each grid location, the UAVs of the whole region (one period)
/// whose return path enters the ball or disk of radius `r` around it.
/// Geometry only: every crossing counts, with no one-receiver rule.
pub fn heatmap(cfg: &NetworkConfig, r: f64, resolution: usize, trial: u64) -> Result<Heatmap> {
    cfg.validate()?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidConfig(format!("heatmap radius must be nonnegative, got {r}")));
    }
    if resolution < 2 {
        return Err(Error::InvalidConfig(format!("heatmap resolution must be at least 2, got {resolution}")));
    }
    let uavs = sample_network_trial(cfg, trial);
    let paths: Vec<Trajectory> = uavs.iter().map(|u| returning_trajectory(u, 0.0, cfg.j, cfg)).collect();
    let s = cfg.s;
    let xs = linspace(-s, s, resolution);
    let ys = xs.clone();
    let zs = match cfg.dim {
        Dimension::ThreeD => linspace(0.0, s, resolution),
        Dimension::TwoD => vec![cfg.h],
    };
    let mut locations = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for &z in &zs {
        for &y in &ys {
            locations.extend(xs.iter().map(|&x| Point::new(x, y, z)));
        }
    }
    let counts: Vec<u32> = crate::simcore::with_pool(|| {
        locations.par_iter().map(|&c| paths.iter().filter(|t| crosses(t, c, r)).count() as u32).collect()
    })?;
    let mut map = Heatmap {
        dim: cfg.dim,
        radius: r,
        resolution,
        xs,
        ys,
        zs,
        counts,
        distance_correlation: RankCorrelation { rho: f64::NAN, p_value: f64::NAN, count: 0 },
    };
    let d: Vec<f64> = locations.iter().map(|&p| map.distance(p)).collect();
    let c: Vec<f64> = map.counts.iter().map(|&v| f64::from(v)).collect();
    map.distance_correlation = spearman(&d, &c);
    Ok(map)
}
