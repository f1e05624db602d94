//! Scenario parameters and the quantities derived from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Network geometry: a 3D cube of UAVs or a 2D plane at fixed altitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimension {
    #[serde(rename = "3d")]
    ThreeD,
    #[serde(rename = "2d")]
    TwoD,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Dimension::ThreeD => "3d",
            Dimension::TwoD => "2d",
        })
    }
}

impl std::str::FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "3d" => Ok(Dimension::ThreeD),
            "2d" => Ok(Dimension::TwoD),
            other => Err(Error::InvalidConfig(format!(
                "unknown dimension '{other}' (expected 3d or 2d)"
            ))),
        }
    }
}

/// All scenario parameters. Lengths in meters, times in seconds.
///
/// Field names in JSON carry a unit suffix (`s_m`, `v_mps`, `t0_s`, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkConfig {
    /// Number of UAVs.
    pub n: u64,
    /// Half side of the region.
    #[serde(rename = "s_m")]
    pub s: f64,
    /// UAV speed.
    #[serde(rename = "v_mps")]
    pub v: f64,
    /// Flight duration per charge.
    #[serde(rename = "t0_s")]
    pub t0: f64,
    /// Altitude of the aerial plane (2D only).
    #[serde(rename = "h_m")]
    pub h: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    pub dim: Dimension,
    /// Cell-size constant (3D), enters c1 = 4 s^3 c0.
    pub c0: f64,
    /// Cell-size constant (2D), enters c3 = 4 s^2 c2.
    pub c2: f64,
    /// 3D pass-chord constant, in (0, 3*sqrt 3].
    pub c4: f64,
    /// 3D per-cell population constant.
    pub c5: f64,
    /// 2D pass-chord constant, in (0, 3*sqrt 2].
    pub c6: f64,
    /// 2D per-cell population constant.
    pub c9: f64,
    /// Width constant of the maneuver trajectory.
    pub kappa: f64,
    /// Mobility maneuver length; zero disables the maneuver.
    #[serde(rename = "mobility_j_m")]
    pub j: f64,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            n: 1 << 16,
            s: 1000.0,
            v: 20.0,
            t0: 400.0,
            h: 100.0,
            alpha: 3.0,
            dim: Dimension::ThreeD,
            c0: 1.0,
            c2: 1.0,
            c4: 3.0 * 3f64.sqrt(),
            c5: 1.0,
            c6: 3.0 * 2f64.sqrt(),
            c9: 1.0,
            kappa: 1.0,
            j: 0.0,
            seed: 1,
        }
    }
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {value}")))
    }
}

impl NetworkConfig {
    /// Default parameters for the given dimension.
    pub fn with_dim(dim: Dimension) -> Self {
        Self { dim, ..Self::default() }
    }

    /// Checks every model constraint, returning the first violation.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", self.n)));
        }
        positive("s_m", self.s)?;
        positive("v_mps", self.v)?;
        positive("t0_s", self.t0)?;
        positive("c0", self.c0)?;
        positive("c2", self.c2)?;
        positive("c5", self.c5)?;
        positive("c9", self.c9)?;
        positive("kappa", self.kappa)?;
        if !(self.alpha.is_finite() && self.alpha > 2.0) {
            return Err(Error::InvalidConfig(format!(
                "path-loss exponent alpha must exceed 2, got {}",
                self.alpha
            )));
        }
        let c4_max = 3.0 * 3f64.sqrt();
        if !(self.c4 > 0.0 && self.c4 <= c4_max * (1.0 + 1e-12)) {
            return Err(Error::InvalidConfig(format!(
                "c4 must lie in (0, 3*sqrt(3)], got {}",
                self.c4
            )));
        }
        let c6_max = 3.0 * 2f64.sqrt();
        if !(self.c6 > 0.0 && self.c6 <= c6_max * (1.0 + 1e-12)) {
            return Err(Error::InvalidConfig(format!(
                "c6 must lie in (0, 3*sqrt(2)], got {}",
                self.c6
            )));
        }
        if !(self.j.is_finite() && self.j >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "mobility_j_m must be nonnegative, got {}",
                self.j
            )));
        }
        let reach = self.t0 * self.v / 2.0;
        match self.dim {
            Dimension::ThreeD => {
                let limit = 3f64.sqrt() / 3.0 * reach;
                if self.s >= limit {
                    return Err(Error::InvalidConfig(format!(
                        "flight-range constraint violated: s = {} must be below (sqrt(3)/3)(t0*v/2) = {limit:.6}; s too large for t0*v",
                        self.s
                    )));
                }
                if self.j > self.s {
                    return Err(Error::InvalidConfig(format!(
                        "mobility_j_m = {} exceeds the vertical extent s = {}",
                        self.j, self.s
                    )));
                }
                if 3f64.sqrt() * self.s + 2.0 * self.j > self.t0 * self.v {
                    return Err(Error::InvalidConfig(format!(
                        "maneuver length {} leaves no energy to return from the far corner",
                        self.j
                    )));
                }
            }
            Dimension::TwoD => {
                if !(self.h.is_finite() && self.h >= 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "h_m must be nonnegative, got {}",
                        self.h
                    )));
                }
                let lhs = 2f64.sqrt() * self.s + self.h;
                if lhs >= reach {
                    return Err(Error::InvalidConfig(format!(
                        "flight-range constraint violated: sqrt(2)*s + h = {lhs:.6} must be below t0*v/2 = {reach:.6}; s or h too large for t0*v"
                    )));
                }
                if self.j > 2.0 * self.s {
                    return Err(Error::InvalidConfig(format!(
                        "mobility_j_m = {} exceeds the plane width 2s = {}",
                        self.j,
                        2.0 * self.s
                    )));
                }
                if 2f64.sqrt() * self.s + 2.0 * self.h + 2.0 * self.j > self.t0 * self.v {
                    return Err(Error::InvalidConfig(format!(
                        "maneuver length {} leaves no energy to return from the far corner",
                        self.j
                    )));
                }
            }
        }
        let side = self.cell_side();
        if !(side < self.s) {
            return Err(Error::InvalidConfig(format!(
                "degenerate cell grid: cell side {side:.6} is not below s = {} (increase n)",
                self.s
            )));
        }
        Ok(())
    }

    pub fn ln_n(&self) -> f64 {
        (self.n as f64).ln()
    }

    pub fn c1(&self) -> f64 {
        4.0 * self.s.powi(3) * self.c0
    }

    pub fn c3(&self) -> f64 {
        4.0 * self.s.powi(2) * self.c2
    }

    /// Cell side: s_n in 3D, xi_n in 2D.
    pub fn cell_side(&self) -> f64 {
        let n = self.n as f64;
        match self.dim {
            Dimension::ThreeD => crate::geometry::cell_side_3d(self.c1(), n),
            Dimension::TwoD => crate::geometry::cell_side_2d(self.c3(), n),
        }
    }

    /// Radius of the ball (3D) or disk (2D) circumscribing a 27- or 9-cell neighborhood.
    pub fn neighborhood_radius(&self) -> f64 {
        match self.dim {
            Dimension::ThreeD => 1.5 * 3f64.sqrt() * self.cell_side(),
            Dimension::TwoD => 1.5 * 2f64.sqrt() * self.cell_side(),
        }
    }

    /// Model pass time of a returner through a neighborhood.
    pub fn pass_time(&self) -> f64 {
        match self.dim {
            Dimension::ThreeD => self.c4 * self.cell_side() / self.v,
            Dimension::TwoD => self.c6 * self.cell_side() / self.v,
        }
    }

    /// Length of the dispatch window: t0 in 3D, t0' = t0 - 2h/v in 2D.
    pub fn dispatch_window(&self) -> f64 {
        match self.dim {
            Dimension::ThreeD => self.t0,
            Dimension::TwoD => self.t0 - 2.0 * self.h / self.v,
        }
    }

    /// Radius of the inscribed hemisphere (L) or disk (K); both equal s.
    pub fn radius(&self) -> f64 {
        self.s
    }

    /// Volume (3D) or area (2D) of the full region.
    pub fn region_measure(&self) -> f64 {
        match self.dim {
            Dimension::ThreeD => 4.0 * self.s.powi(3),
            Dimension::TwoD => 4.0 * self.s.powi(2),
        }
    }

    /// Per-cell population constant for the active dimension.
    pub fn population_constant(&self) -> f64 {
        match self.dim {
            Dimension::ThreeD => self.c5,
            Dimension::TwoD => self.c9,
        }
    }

    /// Stable 64-bit hash of the serialized configuration (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        let text = serde_json::to_string(self).expect("config serializes");
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in text.bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        hash
    }
}
