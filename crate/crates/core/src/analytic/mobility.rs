//! Encounters harvested by the mobility maneuver.

use serde::{Deserialize, Serialize};

use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobilityPrediction {
    pub j: f64,
    /// Expected returners sweeping through a neighborhood during their maneuver.
    pub n_j: f64,
    /// Return threshold with the maneuver's pass time.
    pub k_th: f64,
    /// k_th log k_th.
    pub threshold: f64,
    /// Whether n_j reaches the threshold.
    pub saturates: bool,
    /// Monitoring time given up per UAV, 2J/v.
    pub monitoring_loss: f64,
}

/// N(J): 9 kappa J c5 log n / s_n in 3D, 3 kappa J c9 log n / xi_n in 2D.
pub fn n_of_j(cfg: &NetworkConfig, j: f64) -> f64 {
    let ln_n = cfg.ln_n();
    let side = cfg.cell_side();
    match cfg.dim {
        Dimension::ThreeD => 9.0 * cfg.kappa * j / side * cfg.c5 * ln_n,
        Dimension::TwoD => 3.0 * cfg.kappa * j / side * cfg.c9 * ln_n,
    }
}

/// Threshold when passes take 3 cell sides: t0 v / (3 s_n) or t0 v / (3 xi_n).
pub fn mobility_k_threshold(cfg: &NetworkConfig) -> f64 {
    cfg.t0 * cfg.v / (3.0 * cfg.cell_side())
}

pub fn monitoring_time_loss(cfg: &NetworkConfig, j: f64) -> f64 {
    2.0 * j / cfg.v
}

pub fn mobility_encounters(cfg: &NetworkConfig, j: f64) -> Result<MobilityPrediction> {
    if !(j.is_finite() && j >= 0.0) {
        return Err(Error::Domain(format!("maneuver length must be nonnegative, got {j}")));
    }
    let n_j = n_of_j(cfg, j);
    let k_th = mobility_k_threshold(cfg);
    let threshold = k_th * k_th.ln();
    Ok(MobilityPrediction {
        j,
        n_j,
        k_th,
        threshold,
        saturates: n_j >= threshold,
        monitoring_loss: monitoring_time_loss(cfg, j),
    })
}

/// Smallest maneuver length whose N(J) reaches k_th log k_th.
pub fn saturating_j(cfg: &NetworkConfig) -> f64 {
    let k_th = mobility_k_threshold(cfg);
    k_th * k_th.ln() / n_of_j(cfg, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: u64, dim: Dimension) -> NetworkConfig {
        NetworkConfig { n, s: 1.0, v: 1.0, t0: 10.0, h: 0.1, dim, ..Default::default() }
    }

    #[test]
    fn zero_and_linear() {
        let cfg = unit(100_000, Dimension::ThreeD);
        assert_eq!(mobility_encounters(&cfg, 0.0).unwrap().n_j, 0.0);
        let a = n_of_j(&cfg, 0.2);
        assert!((n_of_j(&cfg, 0.4) - 2.0 * a).abs() < 1e-9 * a);
        assert!(mobility_encounters(&cfg, -1.0).is_err());
        assert!((monitoring_time_loss(&cfg, 0.3) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn ratio_to_threshold_stabilizes() {
        for dim in [Dimension::ThreeD, Dimension::TwoD] {
            let ratios: Vec<f64> = [10_000u64, 1_000_000, 100_000_000]
                .iter()
                .map(|&n| {
                    let p = mobility_encounters(&unit(n, dim), 0.3).unwrap();
                    p.n_j / p.threshold
                })
                .collect();
            let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
            let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
            assert!(lo > 0.0 && hi / lo < 2.0, "{dim}: {ratios:?}");
        }
    }

    #[test]
    fn saturating_length_meets_threshold() {
        let cfg = unit(100_000, Dimension::ThreeD);
        let j = saturating_j(&cfg);
        let p = mobility_encounters(&cfg, j * 1.000001).unwrap();
        assert!(p.saturates);
        assert!(!mobility_encounters(&cfg, j * 0.99).unwrap().saturates);
    }
}
