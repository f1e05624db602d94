use rand::Rng;

use super::{Point, Uav};
use crate::config::{Dimension, NetworkConfig};
use crate::rng::{stream, Purpose};

/// Uniform position in the cube [-s,s]^2 x [0,s] (3D) or on the plane z = h (2D).
pub fn sample_position<R: Rng + ?Sized>(cfg: &NetworkConfig, rng: &mut R) -> Point {
    let s = cfg.s;
    let x = rng.random_range(-s..s);
    let y = rng.random_range(-s..s);
    match cfg.dim {
        Dimension::ThreeD => Point::new(x, y, rng.random_range(0.0..s)),
        Dimension::TwoD => Point::new(x, y, cfg.h),
    }
}

/// Uniform unit vector on the upper hemisphere.
pub fn sample_direction_3d<R: Rng + ?Sized>(rng: &mut R) -> Point {
    let z: f64 = rng.random_range(0.0..1.0);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let rho = (1.0 - z * z).sqrt();
    Point::new(rho * phi.cos(), rho * phi.sin(), z)
}

/// Uniform unit vector in the horizontal plane.
pub fn sample_direction_2d<R: Rng + ?Sized>(rng: &mut R) -> Point {
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    Point::new(phi.cos(), phi.sin(), 0.0)
}

/// Network for trial 0 of `cfg.seed`.
pub fn sample_network(cfg: &NetworkConfig) -> Vec<Uav> {
    sample_network_trial(cfg, 0)
}

/// Positions and dispatch times for one trial. Positions and dispatch
/// times come from separate streams.
pub fn sample_network_trial(cfg: &NetworkConfig, trial: u64) -> Vec<Uav> {
    let mut pos_rng = stream(cfg.seed, trial, Purpose::Positions);
    let mut time_rng = stream(cfg.seed, trial, Purpose::Dispatch);
    let window = cfg.dispatch_window();
    (0..cfg.n as usize)
        .map(|id| Uav {
            id,
            position: sample_position(cfg, &mut pos_rng),
            dispatch: time_rng.random_range(0.0..window),
        })
        .collect()
}
