use serde::{Deserialize, Serialize};

use super::{plane_center, Point, Uav, STATION};
use crate::config::{Dimension, NetworkConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    /// Stationary data collection at the monitor position.
    Monitor,
    /// Up-and-down (3D) or left-and-right (2D) sweep flown before returning.
    Maneuver,
    /// Straight return to the station (3D).
    Return,
    /// In-plane flight to the plane center (2D).
    ReturnInPlane,
    /// Vertical descent from the plane center to the station (2D).
    ReturnDescent,
}

impl Phase {
    /// Whether a returner on this phase can carry data for a neighbor it passes.
    pub fn collects(self) -> bool {
        matches!(self, Phase::Maneuver | Phase::Return | Phase::ReturnInPlane)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
    pub t_start: f64,
    pub t_end: f64,
    pub phase: Phase,
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }
}

/// Time- and space-contiguous piecewise linear path.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Trajectory {
    pub segments: Vec<Segment>,
}

impl Trajectory {
    /// Total flown length, excluding the stationary monitor phase.
    pub fn flight_length(&self) -> f64 {
        self.segments.iter().filter(|s| s.phase != Phase::Monitor).map(Segment::length).sum()
    }

    pub fn phase_length(&self, phase: Phase) -> f64 {
        self.segments.iter().filter(|s| s.phase == phase).map(Segment::length).sum()
    }

    pub fn phase_duration(&self, phase: Phase) -> f64 {
        self.segments.iter().filter(|s| s.phase == phase).map(Segment::duration).sum()
    }

    /// Time the UAV leaves its monitor position.
    pub fn return_start(&self) -> Option<f64> {
        self.segments.iter().find(|s| s.phase != Phase::Monitor).map(|s| s.t_start)
    }

    pub fn arrival(&self) -> Option<f64> {
        self.segments.last().map(|s| s.t_end)
    }

    /// Largest relative deviation from |end - start| = v (t_end - t_start) over moving segments,
    /// and whether consecutive segments join in space and time.
    pub fn max_speed_error(&self, v: f64) -> f64 {
        self.segments
            .iter()
            .filter(|s| s.phase != Phase::Monitor)
            .map(|s| {
                let flown = v * s.duration();
                (s.length() - flown).abs() / s.length().max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_contiguous(&self, tol: f64) -> bool {
        self.segments.windows(2).all(|w| {
            (w[0].t_end - w[1].t_start).abs() <= tol && w[0].end.distance(w[1].start) <= tol
        })
    }
}

/// Sweep interval `[lo, lo + j]` around `coord`, shifted to fit inside `[lower, upper]`
/// so the full length is always flown.
pub fn maneuver_interval(coord: f64, j: f64, lower: f64, upper: f64) -> (f64, f64) {
    let lo = (coord - j / 2.0).max(lower).min(upper - j);
    (lo, lo + j)
}

struct Builder {
    segments: Vec<Segment>,
    at: Point,
    t: f64,
    v: f64,
}

impl Builder {
    fn fly(&mut self, to: Point, phase: Phase) {
        let len = self.at.distance(to);
        if len <= 0.0 {
            return;
        }
        let t_end = self.t + len / self.v;
        self.segments.push(Segment { start: self.at, end: to, t_start: self.t, t_end, phase });
        self.at = to;
        self.t = t_end;
    }
}

/// Monitor phase from dispatch until `return_start`, then the optional
/// maneuver of length 2j, then the return to the station.
pub fn returning_trajectory(uav: &Uav, return_start: f64, j: f64, cfg: &NetworkConfig) -> Trajectory {
    let p = uav.position;
    let mut segments = Vec::with_capacity(6);
    if return_start > uav.dispatch {
        segments.push(Segment {
            start: p,
            end: p,
            t_start: uav.dispatch,
            t_end: return_start,
            phase: Phase::Monitor,
        });
    }
    let mut b = Builder { segments, at: p, t: return_start, v: cfg.v };
    if j > 0.0 {
        match cfg.dim {
            Dimension::ThreeD => {
                let (lo, hi) = maneuver_interval(p.z, j, 0.0, cfg.s);
                b.fly(Point { z: hi, ..p }, Phase::Maneuver);
                b.fly(Point { z: lo, ..p }, Phase::Maneuver);
                b.fly(p, Phase::Maneuver);
            }
            Dimension::TwoD => {
                let (lo, hi) = maneuver_interval(p.x, j, -cfg.s, cfg.s);
                b.fly(Point { x: lo, ..p }, Phase::Maneuver);
                b.fly(Point { x: hi, ..p }, Phase::Maneuver);
                b.fly(p, Phase::Maneuver);
            }
        }
    }
    match cfg.dim {
        Dimension::ThreeD => b.fly(STATION, Phase::Return),
        Dimension::TwoD => {
            b.fly(plane_center(p.z), Phase::ReturnInPlane);
            b.fly(STATION, Phase::ReturnDescent);
        }
    }
    Trajectory { segments: b.segments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(dim: Dimension) -> NetworkConfig {
        NetworkConfig { s: 1.0, v: 2.0, t0: 4.0, h: 0.3, dim, ..Default::default() }
    }

    fn uav(p: Point) -> Uav {
        Uav { id: 0, position: p, dispatch: 0.0 }
    }

    #[test]
    fn straight_down_from_above_station() {
        let c = cfg(Dimension::ThreeD);
        let t = returning_trajectory(&uav(Point::new(0.0, 0.0, 0.7)), 1.0, 0.0, &c);
        let moving: Vec<_> = t.segments.iter().filter(|s| s.phase != Phase::Monitor).collect();
        assert_eq!(moving.len(), 1);
        assert!((moving[0].length() - 0.7).abs() < 1e-12);
        assert!((moving[0].duration() - 0.35).abs() < 1e-12);
        assert_eq!(moving[0].end, STATION);
    }

    #[test]
    fn planar_center_only_descends() {
        let c = cfg(Dimension::TwoD);
        let t = returning_trajectory(&uav(Point::new(0.0, 0.0, 0.3)), 1.0, 0.0, &c);
        assert!((t.arrival().unwrap() - 1.0 - 0.3 / 2.0).abs() < 1e-12);
        assert_eq!(t.phase_length(Phase::ReturnInPlane), 0.0);
    }

    #[test]
    fn maneuver_adds_two_j() {
        for dim in [Dimension::ThreeD, Dimension::TwoD] {
            let c = cfg(dim);
            let p = Point::new(0.3, -0.2, if dim == Dimension::ThreeD { 0.9 } else { 0.3 });
            let plain = returning_trajectory(&uav(p), 1.0, 0.0, &c);
            let moved = returning_trajectory(&uav(p), 1.0, 0.4, &c);
            assert!((moved.flight_length() - plain.flight_length() - 0.8).abs() < 1e-12);
            assert!((moved.phase_duration(Phase::Maneuver) - 0.8 / c.v).abs() < 1e-12);
            assert!(moved.is_contiguous(1e-12));
        }
    }

    #[test]
    fn interval_shifts_at_bounds() {
        assert_eq!(maneuver_interval(0.5, 0.4, 0.0, 1.0), (0.3, 0.7));
        let (lo, hi) = maneuver_interval(0.95, 0.4, 0.0, 1.0);
        assert!((lo - 0.6).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        assert_eq!(maneuver_interval(0.05, 0.4, 0.0, 1.0), (0.0, 0.4));
    }

    proptest! {
        #[test]
        fn speed_and_contiguity(x in -1.0f64..1.0, y in -1.0f64..1.0, z in 0.0f64..1.0, j in 0.0f64..1.0, two in any::<bool>()) {
            let dim = if two { Dimension::TwoD } else { Dimension::ThreeD };
            let c = cfg(dim);
            let p = if two { Point::new(x, y, c.h) } else { Point::new(x, y, z) };
            let t = returning_trajectory(&uav(p), 0.5, j, &c);
            prop_assert!(t.max_speed_error(c.v) < 1e-9);
            prop_assert!(t.is_contiguous(1e-9));
            prop_assert_eq!(t.arrival().map(|_| t.segments.last().unwrap().end), Some(STATION));
            if dim == Dimension::ThreeD {
                for s in &t.segments {
                    prop_assert!(s.end.z >= -1e-12 && s.end.z <= 1.0 + 1e-12);
                }
            }
        }
    }
}
