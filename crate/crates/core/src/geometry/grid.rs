use serde::{Deserialize, Serialize};

use super::Point;
use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};

/// Cube side s_n = (c1 log n / n)^(1/3).
pub fn cell_side_3d(c1: f64, n: f64) -> f64 {
    (c1 * n.ln() / n).cbrt()
}

/// Square side xi_n = (c3 log n / n)^(1/2).
pub fn cell_side_2d(c3: f64, n: f64) -> f64 {
    (c3 * n.ln() / n).sqrt()
}

/// Circumscribed radius of the 27-cube (3D) or 9-square (2D) neighborhood of a cell of side `side`.
pub fn neighborhood_radius(dim: Dimension, side: f64) -> f64 {
    match dim {
        Dimension::ThreeD => 1.5 * 3f64.sqrt() * side,
        Dimension::TwoD => 1.5 * 2f64.sqrt() * side,
    }
}

/// Integer cell coordinates; `k` is always 0 in 2D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellIndex {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

/// Partition of the region into cells of equal side anchored at (-s, -s, 0).
/// The last cell along each axis may be partial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellGrid {
    pub dim: Dimension,
    pub side: f64,
    pub half_width: f64,
    pub nx: i64,
    pub ny: i64,
    pub nz: i64,
}

/// Grid for `cfg`; fails when a cell would be as large as the region.
pub fn cell_grid(cfg: &NetworkConfig) -> Result<CellGrid> {
    if cfg.n < 3 {
        return Err(Error::InvalidConfig(format!("cell grid needs n >= 3, got {}", cfg.n)));
    }
    let side = cfg.cell_side();
    if !(side < cfg.s) {
        return Err(Error::InvalidConfig(format!(
            "degenerate cell grid: cell side {side:.6} is not below s = {}",
            cfg.s
        )));
    }
    Ok(CellGrid::new(cfg.dim, cfg.s, side))
}

impl CellGrid {
    pub fn new(dim: Dimension, half_width: f64, side: f64) -> Self {
        let across = (2.0 * half_width / side).ceil() as i64;
        let nz = match dim {
            Dimension::ThreeD => (half_width / side).ceil() as i64,
            Dimension::TwoD => 1,
        };
        Self { dim, side, half_width, nx: across, ny: across, nz }
    }

    pub fn cell_count(&self) -> usize {
        (self.nx * self.ny * self.nz) as usize
    }

    /// Cell containing `p`; points on the far boundary fall into the last cell.
    pub fn cell_of(&self, p: Point) -> CellIndex {
        let clamp = |v: f64, hi: i64| ((v / self.side).floor() as i64).clamp(0, hi - 1);
        let i = clamp(p.x + self.half_width, self.nx);
        let j = clamp(p.y + self.half_width, self.ny);
        let k = match self.dim {
            Dimension::ThreeD => clamp(p.z, self.nz),
            Dimension::TwoD => 0,
        };
        CellIndex { i, j, k }
    }

    pub fn linear(&self, c: CellIndex) -> usize {
        ((c.k * self.ny + c.j) * self.nx + c.i) as usize
    }

    pub fn from_linear(&self, idx: usize) -> CellIndex {
        let idx = idx as i64;
        CellIndex { i: idx % self.nx, j: (idx / self.nx) % self.ny, k: idx / (self.nx * self.ny) }
    }

    pub fn contains(&self, c: CellIndex) -> bool {
        (0..self.nx).contains(&c.i) && (0..self.ny).contains(&c.j) && (0..self.nz).contains(&c.k)
    }

    /// True when the cell lies entirely inside the region.
    pub fn is_full(&self, c: CellIndex) -> bool {
        let fits = |idx: i64, extent: f64| (idx + 1) as f64 * self.side <= extent * (1.0 + 1e-12);
        let w = 2.0 * self.half_width;
        fits(c.i, w)
            && fits(c.j, w)
            && match self.dim {
                Dimension::ThreeD => fits(c.k, self.half_width),
                Dimension::TwoD => true,
            }
    }

    pub fn center(&self, c: CellIndex, h: f64) -> Point {
        let x = -self.half_width + (c.i as f64 + 0.5) * self.side;
        let y = -self.half_width + (c.j as f64 + 0.5) * self.side;
        let z = match self.dim {
            Dimension::ThreeD => (c.k as f64 + 0.5) * self.side,
            Dimension::TwoD => h,
        };
        Point::new(x, y, z)
    }

    /// Cell holding the station (3D) or the plane center (2D).
    pub fn station_cell(&self) -> CellIndex {
        self.cell_of(Point::ORIGIN)
    }

    /// Number of points in each cell, indexed by `linear`.
    pub fn occupancy(&self, points: impl IntoIterator<Item = Point>) -> Vec<u32> {
        let mut counts = vec![0u32; self.cell_count()];
        for p in points {
            counts[self.linear(self.cell_of(p))] += 1;
        }
        counts
    }
}
