//! Reproducible studies: parameter sweeps with exponent fits, heatmaps of
//! potential returners, delay curves and capacity profiles. Every table
//! row carries the seed and configuration hash it came from.

mod delay_curve;
mod heatmap;
mod output;
mod profile;
mod scaling;
mod sweep;

pub use delay_curve::{delay_curve, delay_options, DelayCurve, DelayCurveSpec, DelayRow};
pub use heatmap::{heatmap, normalized, Heatmap, HeatmapCell, HeatmapSpec};
pub use output::{
    config_hash, git_describe, pinned_epoch, timestamp, write_csv, write_json, Sidecar, StudyClock,
};
pub use profile::{profile_rows, ProfileRow};
pub use scaling::{fit_scaling, ScalingFit, MIN_FIT_DECADES, MIN_FIT_POINTS};
pub use sweep::{sweep, Metric, SweepRow, SweepSpec, SweepTable, SweepVariable};
