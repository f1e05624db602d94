//! Regions, placement, trajectories and exact encounter geometry.

mod encounter;
mod grid;
mod sampling;
mod trajectory;

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

pub use encounter::{encounters, segment_ball_encounter, EncounterEvent, Intersection};
pub(crate) use encounter::chord_params;
pub use grid::{cell_grid, cell_side_2d, cell_side_3d, neighborhood_radius, CellGrid, CellIndex};
pub use sampling::{
    sample_direction_2d, sample_direction_3d, sample_network, sample_network_trial,
    sample_position,
};
pub use trajectory::{maneuver_interval, returning_trajectory, Phase, Segment, Trajectory};

/// A point in space, meters. 2D positions live at z = h.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Horizontal distance from the vertical axis through the origin.
    pub fn planar_norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k, self.z * k)
    }
}

/// A UAV: its monitoring position and dispatch time within the first period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Uav {
    pub id: usize,
    pub position: Point,
    pub dispatch: f64,
}

/// Ground station, at the center of the cube's bottom face (3D) or below the plane center (2D).
pub const STATION: Point = Point::ORIGIN;

/// Point where in-plane returns end before the vertical descent (2D).
pub fn plane_center(h: f64) -> Point {
    Point::new(0.0, 0.0, h)
}
