//! SCF delivery delay: carry time plus waiting for a returner.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::numerics::integrate;
use crate::config::{Dimension, NetworkConfig};
use crate::error::Result;

/// Absolute tolerance of the waiting-term quadrature (on the integral itself).
pub const QUADRATURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayBound {
    pub carry_term: f64,
    pub waiting_term: f64,
    pub total: f64,
}

impl DelayBound {
    fn new(carry_term: f64, waiting_term: f64) -> Self {
        Self { carry_term, waiting_term, total: carry_term + waiting_term }
    }
}

/// Delay evaluated two ways: the exact integral and its closed-form upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayEstimates {
    pub quadrature: DelayBound,
    pub closed_form: DelayBound,
}

/// Mean carry time from a uniformly placed UAV: 3L/(4v) in 3D, 2K/(3v) + h/v in 2D.
pub fn carry_term(cfg: &NetworkConfig) -> f64 {
    match cfg.dim {
        Dimension::ThreeD => 0.75 * cfg.radius() / cfg.v,
        Dimension::TwoD => 2.0 * cfg.radius() / (3.0 * cfg.v) + cfg.h / cfg.v,
    }
}

/// Closed-form value of the integral of x^4/(L - x + r) over [0, L].
pub fn bound_integral_3d(l: f64, r: f64) -> f64 {
    (l + r).powi(4) * ((l + r) / r).ln()
        - l / 12.0 * (25.0 * l.powi(3) + 52.0 * l * l * r + 42.0 * l * r * r + 12.0 * r.powi(3))
}

/// Closed-form value of the integral of x^2/(K - x + r) over [0, K].
pub fn bound_integral_2d(k: f64, r: f64) -> f64 {
    (k + r).powi(2) * ((k + r) / r).ln() - k / 2.0 * (3.0 * k + 2.0 * r)
}

pub fn delay_bound_3d(cfg: &NetworkConfig) -> Result<DelayEstimates> {
    let l = cfg.radius();
    let r = cfg.neighborhood_radius();
    let n = cfg.n as f64;
    let scale = 36.0 * cfg.t0 / (PI * n * r * r);
    let q = integrate(|x| x.powi(4) / (l.powi(3) - (x - r).powi(3)), 0.0, l, QUADRATURE_TOL)?;
    let carry = carry_term(cfg);
    Ok(DelayEstimates {
        quadrature: DelayBound::new(carry, scale * q.value),
        closed_form: DelayBound::new(carry, scale / (l * l) * bound_integral_3d(l, r)),
    })
}

pub fn delay_bound_2d(cfg: &NetworkConfig) -> Result<DelayEstimates> {
    let k = cfg.radius();
    let r = cfg.neighborhood_radius();
    let n = cfg.n as f64;
    let q = integrate(|x| x * x / (k * k - (x - r).powi(2)), 0.0, k, QUADRATURE_TOL)?;
    let carry = carry_term(cfg);
    Ok(DelayEstimates {
        quadrature: DelayBound::new(carry, 8.0 * cfg.t0 / (n * r) * q.value),
        closed_form: DelayBound::new(carry, 8.0 * cfg.t0 / (n * k * r) * bound_integral_2d(k, r)),
    })
}

pub fn delay_bound(cfg: &NetworkConfig) -> Result<DelayEstimates> {
    match cfg.dim {
        Dimension::ThreeD => delay_bound_3d(cfg),
        Dimension::TwoD => delay_bound_2d(cfg),
    }
}

/// Density of a UAV's distance from the station (3D) or plane center (2D), uniform placement
/// in the inscribed hemisphere or disk.
pub fn delay_position_pdf(x: f64, cfg: &NetworkConfig) -> f64 {
    let a = cfg.radius();
    if !(0.0..=a).contains(&x) {
        return 0.0;
    }
    match cfg.dim {
        Dimension::ThreeD => 3.0 * x * x / a.powi(3),
        Dimension::TwoD => 2.0 * x / (a * a),
    }
}

/// Distribution function matching [`delay_position_pdf`].
pub fn delay_position_cdf(x: f64, cfg: &NetworkConfig) -> f64 {
    let t = (x / cfg.radius()).clamp(0.0, 1.0);
    match cfg.dim {
        Dimension::ThreeD => t.powi(3),
        Dimension::TwoD => t * t,
    }
}
