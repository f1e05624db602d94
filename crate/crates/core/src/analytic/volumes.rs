//! Cone-sector geometry behind the expected number of crossing returners.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};
use crate::geometry;

/// A geometric measure, flagged when the station lies inside the neighborhood
/// (x < r) and the full hemisphere or disk was substituted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    pub value: f64,
    pub clamped: bool,
}

fn check(outer: f64, x: f64, r: f64) -> Result<()> {
    if !(outer > 0.0 && r > 0.0 && r < outer) {
        return Err(Error::Domain(format!("need 0 < r < radius, got r = {r}, radius = {outer}")));
    }
    if !(x > 0.0 && x <= outer * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("distance x = {x} outside (0, {outer}]")));
    }
    Ok(())
}

/// Volume of the cone of half-angle asin(r/x) cut from the hemisphere of radius `l`.
pub fn sector_volume_3d(l: f64, x: f64, r: f64) -> Result<Measure> {
    check(l, x, r)?;
    let full = 2.0 * PI / 3.0 * l.powi(3);
    if x < r {
        return Ok(Measure { value: full, clamped: true });
    }
    let value = full * (1.0 - (x * x - r * r).sqrt() / x);
    Ok(Measure { value, clamped: false })
}

/// Part of the sector beyond distance x - r from the station.
pub fn shaded_volume_3d(l: f64, x: f64, r: f64) -> Result<Measure> {
    let sector = sector_volume_3d(l, x, r)?;
    let inner = (x - r).max(0.0) / l;
    Ok(Measure { value: sector.value * (1.0 - inner.powi(3)), clamped: sector.clamped })
}

fn half_angle_2d(x: f64, r: f64) -> (f64, bool) {
    if x < r {
        (FRAC_PI_2, true)
    } else {
        ((r / x).asin(), false)
    }
}

/// Area of the disk sector of half-angle asin(r/x), radius `k`.
pub fn sector_area_2d(k: f64, x: f64, r: f64) -> Result<Measure> {
    check(k, x, r)?;
    let (theta, clamped) = half_angle_2d(x, r);
    Ok(Measure { value: k * k * theta, clamped })
}

/// Sector area beyond distance x - r from the plane center: (K^2 - (x-r)^2) asin(r/x).
pub fn shaded_area_2d(k: f64, x: f64, r: f64) -> Result<Measure> {
    check(k, x, r)?;
    let (theta, clamped) = half_angle_2d(x, r);
    let inner = (x - r).max(0.0);
    Ok(Measure { value: (k * k - inner * inner) * theta, clamped })
}

/// Expected number of UAVs in the shaded region (3D): n S_u / (4 L^3).
pub fn ku_3d(cfg: &NetworkConfig, x: f64) -> Result<f64> {
    let l = cfg.radius();
    let side = geometry::cell_side_3d(cfg.c1(), cfg.n as f64);
    let su = shaded_volume_3d(l, x, geometry::neighborhood_radius(Dimension::ThreeD, side))?;
    Ok(cfg.n as f64 * su.value / (4.0 * l.powi(3)))
}

/// Expected number of UAVs in the shaded sector (2D): n S_u / (4 K^2).
pub fn ku_2d(cfg: &NetworkConfig, x: f64) -> Result<f64> {
    let k = cfg.radius();
    let side = geometry::cell_side_2d(cfg.c3(), cfg.n as f64);
    let su = shaded_area_2d(k, x, geometry::neighborhood_radius(Dimension::TwoD, side))?;
    Ok(cfg.n as f64 * su.value / (4.0 * k * k))
}

/// k_u for the configured dimension.
pub fn ku(cfg: &NetworkConfig, x: f64) -> Result<f64> {
    match cfg.dim {
        Dimension::ThreeD => ku_3d(cfg, x),
        Dimension::TwoD => ku_2d(cfg, x),
    }
}

/// Shaded measure for the configured dimension.
pub fn shaded_measure(cfg: &NetworkConfig, x: f64) -> Result<Measure> {
    let r = cfg.neighborhood_radius();
    match cfg.dim {
        Dimension::ThreeD => shaded_volume_3d(cfg.radius(), x, r),
        Dimension::TwoD => shaded_area_2d(cfg.radius(), x, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sector_hand_value() {
        let s = sector_volume_3d(1.0, 0.5, 0.3).unwrap();
        assert!((s.value - 2.0 * PI / 15.0).abs() < 1e-12);
        assert!(!s.clamped);
    }

    #[test]
    fn hemisphere_limits() {
        let s = sector_volume_3d(1.0, 0.3, 0.3).unwrap();
        assert!((s.value - 2.0 * PI / 3.0).abs() < 1e-12);
        let s = sector_volume_3d(1.0, 0.2, 0.3).unwrap();
        assert!(s.clamped && (s.value - 2.0 * PI / 3.0).abs() < 1e-12);
        let su = shaded_volume_3d(1.0, 0.2, 0.3).unwrap();
        assert_eq!(su.value, s.value);
        assert!(sector_volume_3d(1.0, 0.5, 1e-9).unwrap().value < 1e-15);
        assert!(shaded_volume_3d(1.0, 0.5, 1e-9).unwrap().value < 1e-15);
    }

    #[test]
    fn shaded_sliver_at_rim() {
        let cfg = NetworkConfig { n: 100_000, s: 1.0, v: 1.0, t0: 10.0, ..Default::default() };
        let k = ku_3d(&cfg, 1.0).unwrap();
        assert!(k > 0.0 && k < ku_3d(&cfg, 0.9).unwrap());
    }

    #[test]
    fn planar_hand_value() {
        let su = shaded_area_2d(1.0, 0.5, 0.1).unwrap();
        assert!((su.value - 0.84 * 0.2f64.asin()).abs() < 1e-12);
        assert!((su.value - 0.16914).abs() < 1e-5);
        let ku = 1000.0 * su.value / 4.0;
        assert!((ku - 42.29).abs() < 0.01);
    }

    #[test]
    fn domain_checks() {
        assert!(sector_volume_3d(1.0, 1.5, 0.1).is_err());
        assert!(sector_volume_3d(1.0, 0.0, 0.1).is_err());
        assert!(shaded_area_2d(1.0, 0.5, 2.0).is_err());
    }

    proptest! {
        #[test]
        fn shaded_monotone_and_bounded(r in 0.001f64..0.5, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let x1 = r + (1.0 - r) * lo;
            let x2 = r + (1.0 - r) * hi;
            let s1 = shaded_volume_3d(1.0, x1, r).unwrap().value;
            let s2 = shaded_volume_3d(1.0, x2, r).unwrap().value;
            prop_assert!(s2 <= s1 * (1.0 + 1e-12) && s2 >= 0.0);
            let c1 = sector_volume_3d(1.0, x1, r).unwrap().value;
            prop_assert!(s1 <= c1 * (1.0 + 1e-12) && c1 <= 2.0 * PI / 3.0 * (1.0 + 1e-12));
            let a1 = shaded_area_2d(1.0, x1, r).unwrap().value;
            let a2 = shaded_area_2d(1.0, x2, r).unwrap().value;
            prop_assert!(a2 <= a1 * (1.0 + 1e-12) && a2 >= 0.0);
        }
    }
}
