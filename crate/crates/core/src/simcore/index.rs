//! Candidate lookups so each observer only tests returners that can reach it.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::geometry::Point;

/// Items grouped by bucket in one flat array.
#[derive(Debug, Clone)]
struct Buckets {
    offsets: Vec<usize>,
    items: Vec<usize>,
}

impl Buckets {
    fn new(count: usize, keys: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; count + 1];
        for &(b, _) in keys {
            offsets[b + 1] += 1;
        }
        for i in 0..count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut items = vec![0usize; keys.len()];
        for &(b, item) in keys {
            items[fill[b]] = item;
            fill[b] += 1;
        }
        Self { offsets, items }
    }

    fn bucket(&self, b: usize) -> &[usize] {
        &self.items[self.offsets[b]..self.offsets[b + 1]]
    }
}

fn azimuth(p: Point) -> f64 {
    p.y.atan2(p.x).rem_euclid(TAU)
}

/// Upper-hemisphere directions on a (z, azimuth) grid of near-equal-area cells.
#[derive(Debug, Clone)]
pub(crate) struct DirectionIndex {
    gz: usize,
    gphi: usize,
    buckets: Buckets,
    units: Vec<Point>,
}

impl DirectionIndex {
    /// `points[i]` is indexed as item `i`; points at the origin go in the top row.
    pub fn new(points: &[Point]) -> Self {
        let target = (points.len() / 4).max(1) as f64;
        let gz = (target / TAU).sqrt().ceil().max(1.0) as usize;
        let gphi = (TAU * gz as f64).ceil() as usize;
        let units: Vec<Point> = points
            .iter()
            .map(|&p| {
                let n = p.norm();
                if n > 0.0 { p * (1.0 / n) } else { Point::new(0.0, 0.0, 1.0) }
            })
            .collect();
        let keys: Vec<(usize, usize)> = units
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                let iz = ((u.z.clamp(0.0, 1.0) * gz as f64) as usize).min(gz - 1);
                let ip = ((azimuth(u) / TAU * gphi as f64) as usize).min(gphi - 1);
                (iz * gphi + ip, i)
            })
            .collect();
        Self { gz, gphi, buckets: Buckets::new(gz * gphi, &keys), units }
    }

    /// Calls `f` for every item within angle `theta` of the unit vector `c`
    /// (and possibly a few more).
    pub fn for_each_within(&self, c: Point, theta: f64, mut f: impl FnMut(usize)) {
        if theta >= FRAC_PI_2 {
            self.units.iter().enumerate().for_each(|(i, _)| f(i));
            return;
        }
        let elev = c.z.clamp(-1.0, 1.0).asin();
        let z_lo = (elev - theta).max(0.0).sin();
        let z_hi = (elev + theta).min(FRAC_PI_2).sin();
        if elev + theta < 0.0 {
            return;
        }
        let row = |z: f64| ((z * self.gz as f64) as usize).min(self.gz - 1);
        let cos_e = elev.cos();
        let full_ring = elev + theta >= FRAC_PI_2 || cos_e <= theta.sin();
        let cols: Vec<(usize, usize)> = if full_ring {
            vec![(0, self.gphi - 1)]
        } else {
            let half = (theta.sin() / cos_e).asin();
            let phi = azimuth(c);
            let lo = ((phi - half) / TAU * self.gphi as f64).floor() as i64;
            let hi = ((phi + half) / TAU * self.gphi as f64).floor() as i64;
            if hi - lo + 1 >= self.gphi as i64 {
                vec![(0, self.gphi - 1)]
            } else {
                let g = self.gphi as i64;
                let (a, b) = (lo.rem_euclid(g) as usize, hi.rem_euclid(g) as usize);
                if a <= b { vec![(a, b)] } else { vec![(a, self.gphi - 1), (0, b)] }
            }
        };
        for iz in row(z_lo)..=row(z_hi) {
            for &(a, b) in &cols {
                for ip in a..=b {
                    self.buckets.bucket(iz * self.gphi + ip).iter().for_each(|&i| f(i));
                }
            }
        }
    }
}

/// Horizontal directions sorted by azimuth.
#[derive(Debug, Clone)]
pub(crate) struct AngleIndex {
    sorted: Vec<(f64, usize)>,
}

impl AngleIndex {
    pub fn new(points: &[Point]) -> Self {
        let mut sorted: Vec<(f64, usize)> = points.iter().enumerate().map(|(i, &p)| (azimuth(p), i)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Self { sorted }
    }

    /// Items whose azimuth lies within `half` of the azimuth of `c`.
    pub fn for_each_within(&self, c: Point, half: f64, mut f: impl FnMut(usize)) {
        if half >= std::f64::consts::PI {
            self.sorted.iter().for_each(|&(_, i)| f(i));
            return;
        }
        let phi = azimuth(c);
        let mut scan = |lo: f64, hi: f64| {
            let a = self.sorted.partition_point(|e| e.0 < lo);
            self.sorted[a..].iter().take_while(|e| e.0 <= hi).for_each(|&(_, i)| f(i));
        };
        let (lo, hi) = (phi - half, phi + half);
        if lo < 0.0 {
            scan(lo + TAU, TAU);
            scan(0.0, hi);
        } else if hi >= TAU {
            scan(lo, TAU);
            scan(0.0, hi - TAU);
        } else {
            scan(lo, hi);
        }
    }
}

/// Points bucketed on a square grid in the horizontal plane.
#[derive(Debug, Clone)]
pub(crate) struct ColumnIndex {
    origin: f64,
    cell: f64,
    g: usize,
    buckets: Buckets,
}

impl ColumnIndex {
    /// Points in `[-half, half]^2` (x, y); `cell` is the bucket side.
    pub fn new(points: &[(usize, Point)], half: f64, cell: f64) -> Self {
        let g = ((2.0 * half / cell).ceil() as usize).clamp(1, 4096);
        let cell = 2.0 * half / g as f64;
        let origin = -half;
        let keys: Vec<(usize, usize)> = points
            .iter()
            .map(|&(id, p)| {
                let ix = (((p.x - origin) / cell) as usize).min(g - 1);
                let iy = (((p.y - origin) / cell) as usize).min(g - 1);
                (iy * g + ix, id)
            })
            .collect();
        Self { origin, cell, g, buckets: Buckets::new(g * g, &keys), }
    }

    /// Items whose (x, y) may lie within `r` of `(cx, cy)`.
    pub fn for_each_near(&self, cx: f64, cy: f64, r: f64, mut f: impl FnMut(usize)) {
        let clamp = |v: f64| (((v - self.origin) / self.cell).floor().max(0.0) as usize).min(self.g - 1);
        let (x0, x1) = (clamp(cx - r), clamp(cx + r));
        let (y0, y1) = (clamp(cy - r), clamp(cy + r));
        for iy in y0..=y1 {
            for ix in x0..=x1 {
                self.buckets.bucket(iy * self.g + ix).iter().for_each(|&i| f(i));
            }
        }
    }
}

/// Points sorted by their y coordinate.
#[derive(Debug, Clone)]
pub(crate) struct StripIndex {
    sorted: Vec<(f64, usize)>,
}

impl StripIndex {
    pub fn new(points: &[(usize, Point)]) -> Self {
        let mut sorted: Vec<(f64, usize)> = points.iter().map(|&(id, p)| (p.y, id)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Self { sorted }
    }

    /// Items with |y - cy| <= r.
    pub fn for_each_near(&self, cy: f64, r: f64, mut f: impl FnMut(usize)) {
        let a = self.sorted.partition_point(|e| e.0 < cy - r);
        self.sorted[a..].iter().take_while(|e| e.0 <= cy + r).for_each(|&(_, i)| f(i));
    }
}
