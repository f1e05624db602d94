//! Thresholds k_th, u and gamma, and the critical ranges x1*, x2*.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::numerics::bisect;
use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};

/// Smallest n for which the thresholds are evaluated (log log n must be comfortably positive).
pub const MIN_N: u64 = 16;

fn check_n(cfg: &NetworkConfig) -> Result<()> {
    if cfg.n < MIN_N {
        return Err(Error::Domain(format!("thresholds need n >= {MIN_N}, got {}", cfg.n)));
    }
    Ok(())
}

/// Returners per flight period needed so that consecutive gaps fall below one pass time.
pub fn k_threshold(cfg: &NetworkConfig) -> Result<f64> {
    check_n(cfg)?;
    Ok(cfg.dispatch_window() / cfg.pass_time())
}

/// log k_th written out as in the threshold derivation.
fn log_term(cfg: &NetworkConfig) -> f64 {
    let ln_n = cfg.ln_n();
    match cfg.dim {
        Dimension::ThreeD => {
            (cfg.t0 * cfg.v / (cfg.c1().cbrt() * cfg.c4)).ln() + ln_n / 3.0 - ln_n.ln() / 3.0
        }
        Dimension::TwoD => {
            (cfg.dispatch_window() * cfg.v / (cfg.c3().sqrt() * cfg.c6)).ln() + ln_n / 2.0
                - ln_n.ln() / 2.0
        }
    }
}

fn prefactor(cfg: &NetworkConfig) -> f64 {
    let ln_n = cfg.ln_n();
    match cfg.dim {
        Dimension::ThreeD => 16.0 * cfg.t0 * cfg.v / (9.0 * PI * cfg.c1() * cfg.c4 * ln_n),
        Dimension::TwoD => {
            let k = cfg.radius();
            8.0 * k * k * cfg.dispatch_window() * cfg.v
                / (3.0 * 2f64.sqrt() * cfg.c3() * cfg.c6 * ln_n)
        }
    }
}

/// Right-hand side of the saturation condition on x.
pub fn u_value(cfg: &NetworkConfig) -> Result<f64> {
    check_n(cfg)?;
    Ok(prefactor(cfg) * log_term(cfg))
}

/// Right-hand side of the sparse-regime condition on x.
pub fn gamma_value(cfg: &NetworkConfig) -> Result<f64> {
    check_n(cfg)?;
    Ok(prefactor(cfg) / log_term(cfg))
}

/// Root of a critical-range condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalRoot {
    /// Authoritative value.
    pub value: f64,
    /// Bisection root of the defining condition.
    pub bisection: f64,
    /// Closed-form root when its radicals are real.
    pub closed_form: Option<f64>,
}

/// Left side of the 3D condition, (1/x^2)(1 - x^3/L^3).
pub fn condition_3d(l: f64, x: f64) -> f64 {
    (1.0 - (x / l).powi(3)) / (x * x)
}

/// Left side of the 2D condition, (1/x)(K^2 - x^2).
pub fn condition_2d(k: f64, x: f64) -> f64 {
    (k * k - x * x) / x
}

/// Cubic-radical root of x^3 + u L^3 x^2 - L^3 = 0; `None` when 27 - 4 L^6 u^3 < 0.
pub fn critical_range_3d_closed_form(l: f64, u: f64) -> Option<f64> {
    let l3 = l.powi(3);
    let l6 = l3 * l3;
    let disc = 27.0 - 4.0 * l6 * u.powi(3);
    if disc < 0.0 {
        return None;
    }
    let a = 27.0 * l3 - 2.0 * l6 * l3 * u.powi(3) + 3.0 * l3 * (3.0 * disc).sqrt();
    let cbrt2 = 2f64.cbrt();
    let ac = a.cbrt();
    Some(cbrt2 * l6 * u * u / (3.0 * ac) + ac / (3.0 * cbrt2) - l3 * u / 3.0)
}

/// x1* in 3D: root in (0, L) of (1/x^2)(1 - x^3/L^3) = u. Nonpositive u puts every x in range.
pub fn critical_range_3d(l: f64, u: f64) -> Result<CriticalRoot> {
    if !(l > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("critical range needs L > 0 and finite u, got L = {l}, u = {u}")));
    }
    if u <= 0.0 {
        return Ok(CriticalRoot { value: l, bisection: l, closed_form: None });
    }
    // the condition blows up at 0 and equals -u at L, so a bracket always exists
    let lo = l * 1e-100;
    let root = bisect(|x| condition_3d(l, x) - u, lo, l, 0.0).ok_or(Error::Numerical {
        what: "critical range",
        detail: format!("no sign change for L = {l}, u = {u}"),
    })?;
    Ok(CriticalRoot { value: root, bisection: root, closed_form: critical_range_3d_closed_form(l, u) })
}

/// x1* in 2D: (sqrt(4K^2 + u^2) - u)/2, with the cancellation-free form as the value.
pub fn critical_range_2d(k: f64, u: f64) -> Result<CriticalRoot> {
    if !(k > 0.0 && u.is_finite()) {
        return Err(Error::Domain(format!("critical range needs K > 0 and finite u, got K = {k}, u = {u}")));
    }
    if u <= 0.0 {
        return Ok(CriticalRoot { value: k, bisection: k, closed_form: Some(k) });
    }
    let textbook = 0.5 * (4.0 * k * k + u * u).sqrt() - 0.5 * u;
    let stable = 2.0 * k * k / (u + (u * u + 4.0 * k * k).sqrt());
    let root = bisect(|x| condition_2d(k, x) - u, k * 1e-100, k, 0.0)
        .ok_or(Error::Numerical { what: "critical range", detail: format!("no sign change for K = {k}, u = {u}") })?;
    Ok(CriticalRoot { value: stable, bisection: root, closed_form: Some(textbook) })
}

/// Capacity regime of an observer at distance x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    WithinCritical,
    Transition,
    OutsideCritical,
}

/// All threshold quantities for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalRanges {
    pub x1_star: f64,
    /// Root of the sparse-regime condition; `None` when it does not exceed x1*.
    pub x2_star: Option<f64>,
    pub u: f64,
    pub gamma: f64,
    pub k_th: f64,
    pub log_k_th: f64,
    pub x1_bisection: f64,
    pub x1_closed_form: Option<f64>,
    pub closed_form_valid: bool,
    /// Hemisphere or disk radius.
    pub radius: f64,
    pub neighborhood_radius: f64,
    /// x1* no larger than the neighborhood radius.
    pub collapsed: bool,
}

impl CriticalRanges {
    pub fn classify(&self, x: f64) -> Regime {
        if x <= self.x1_star {
            Regime::WithinCritical
        } else if self.x2_star.is_some_and(|x2| x >= x2) {
            Regime::OutsideCritical
        } else {
            Regime::Transition
        }
    }
}

/// x2*: bisection root of the sparse-regime condition on [x1*, radius].
pub fn x2_star(cfg: &NetworkConfig) -> Result<Option<f64>> {
    let gamma = gamma_value(cfg)?;
    let x1 = critical_ranges_x1(cfg)?.value;
    let radius = cfg.radius();
    let cond = |x: f64| match cfg.dim {
        Dimension::ThreeD => condition_3d(radius, x),
        Dimension::TwoD => condition_2d(radius, x),
    };
    if !(gamma > 0.0) || cond(x1) <= gamma {
        return Ok(None);
    }
    Ok(bisect(|x| cond(x) - gamma, x1, radius, 0.0))
}

fn critical_ranges_x1(cfg: &NetworkConfig) -> Result<CriticalRoot> {
    let u = u_value(cfg)?;
    match cfg.dim {
        Dimension::ThreeD => critical_range_3d(cfg.radius(), u),
        Dimension::TwoD => critical_range_2d(cfg.radius(), u),
    }
}

pub fn critical_ranges(cfg: &NetworkConfig) -> Result<CriticalRanges> {
    let k_th = k_threshold(cfg)?;
    let u = u_value(cfg)?;
    let gamma = gamma_value(cfg)?;
    let root = critical_ranges_x1(cfg)?;
    let r = cfg.neighborhood_radius();
    Ok(CriticalRanges {
        x1_star: root.value,
        x2_star: x2_star(cfg)?,
        u,
        gamma,
        k_th,
        log_k_th: log_term(cfg),
        x1_bisection: root.bisection,
        x1_closed_form: root.closed_form,
        closed_form_valid: root.closed_form.is_some(),
        radius: cfg.radius(),
        neighborhood_radius: r,
        collapsed: root.value <= r,
    })
}
