//! Normalized per-hop transmission rates.

use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("path-loss exponent must exceed 2, got {alpha}")))
    }
}

/// 3D per-hop rate R1 with order constants set to 1:
/// n^((alpha-3)/3)/27 below alpha = 3, 1/(27 log n) at 3, 1/27 above.
pub fn per_hop_rate_3d(alpha: f64, n: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(n > 1.0) {
        return Err(Error::Domain(format!("per-hop rate needs n > 1, got {n}")));
    }
    Ok(if alpha < 3.0 {
        n.powf((alpha - 3.0) / 3.0) / 27.0
    } else if alpha == 3.0 {
        1.0 / (27.0 * n.ln())
    } else {
        1.0 / 27.0
    })
}

/// 2D per-hop rate R2 (constant for every alpha > 2).
pub fn per_hop_rate_2d(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(1.0)
}

/// 2D rate from the central cell to the station, R3.
pub fn sink_rate_2d(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(1.0)
}

/// Multi-hop capacity of the 2D network, min(R2, R3).
pub fn multihop_capacity_2d(alpha: f64) -> Result<f64> {
    Ok(per_hop_rate_2d(alpha)?.min(sink_rate_2d(alpha)?))
}

/// R1 or R2 for the configured dimension.
pub fn per_hop_rate(cfg: &NetworkConfig) -> Result<f64> {
    match cfg.dim {
        Dimension::ThreeD => per_hop_rate_3d(cfg.alpha, cfg.n as f64),
        Dimension::TwoD => per_hop_rate_2d(cfg.alpha),
    }
}

/// Per-node multi-hop rate when all `n` flows share the sink: R / n.
pub fn multihop_per_node(rate: f64, n: u64) -> f64 {
    rate / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_values() {
        assert_eq!(per_hop_rate_3d(4.0, 1e9).unwrap(), 1.0 / 27.0);
        assert!((per_hop_rate_3d(3.0, std::f64::consts::E).unwrap() - 1.0 / 27.0).abs() < 1e-15);
        let r = per_hop_rate_3d(2.5, 1e6).unwrap();
        assert!((r - 0.1 / 27.0).abs() < 1e-12);
        assert!((r - 0.003704).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        assert!(per_hop_rate_3d(2.0, 100.0).is_err());
        assert!(per_hop_rate_2d(1.5).is_err());
        assert!(per_hop_rate_3d(3.0, 1.0).is_err());
    }

    #[test]
    fn planar_rates_are_unit() {
        assert_eq!(per_hop_rate_2d(3.0).unwrap(), 1.0);
        assert_eq!(multihop_capacity_2d(3.0).unwrap(), 1.0);
        assert_eq!(multihop_per_node(1.0, 4), 0.25);
    }
}
