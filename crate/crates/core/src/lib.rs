//! Store-carry-and-forward (SCF) data delivery in UAV networks.
//!
//! UAVs monitor fixed positions in a cube (3D) or on a plane at altitude
//! `h` (2D) and fly back to a ground station when their battery runs out.
//! A returning UAV that passes a neighbor can carry that neighbor's data
//! home. This crate evaluates the closed-form capacity and delay laws of
//! that scheme ([`analytic`]) and checks them by exact-geometry Monte Carlo
//! ([`simcore`]), with study drivers in [`experiments`].

pub mod analytic;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod rng;
pub mod simcore;
pub mod stats;

pub use config::{Dimension, NetworkConfig};
pub use error::{Error, Result};
