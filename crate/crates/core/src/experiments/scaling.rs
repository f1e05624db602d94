//! Log-log regression of metrics over the network size.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::linear_fit;

/// Fewest grid points a fit accepts.
pub const MIN_FIT_POINTS: usize = 4;
/// Smallest span of the n-grid, in decades.
pub const MIN_FIT_DECADES: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub metric: String,
    /// Power of log n divided out before fitting.
    pub log_power: f64,
    /// Slope of log(metric / (log n)^log_power) against log n.
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub exponent_stderr: f64,
    /// Grid values that entered the fit.
    pub grid: Vec<f64>,
    /// Grid points dropped for nonpositive or missing values.
    pub excluded: usize,
}

/// Fits `values ~ C (log n)^log_power n^exponent` by least squares on logs.
/// Nonpositive or non-finite values are dropped with a warning.
pub fn fit_scaling(metric: &str, ns: &[f64], values: &[f64], log_power: f64) -> Result<ScalingFit> {
    if ns.len() != values.len() {
        return Err(Error::Domain(format!("{metric}: {} grid points but {} values", ns.len(), values.len())));
    }
    let mut grid = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&n, &v) in ns.iter().zip(values) {
        if !(v.is_finite() && v > 0.0 && n > 1.0) {
            warn!("{metric}: excluding nonpositive value {v} at n = {n}");
            continue;
        }
        grid.push(n);
        xs.push(n.ln());
        ys.push(v.ln() - log_power * n.ln().ln());
    }
    if grid.len() < MIN_FIT_POINTS {
        return Err(Error::Domain(format!(
            "{metric}: a scaling fit needs at least {MIN_FIT_POINTS} usable grid points, got {}",
            grid.len()
        )));
    }
    let decades = (grid[grid.len() - 1] / grid[0]).log10();
    if decades < MIN_FIT_DECADES {
        return Err(Error::Domain(format!(
            "{metric}: grid spans {decades:.2} decades, a scaling fit needs {MIN_FIT_DECADES}"
        )));
    }
    let fit = linear_fit(&xs, &ys);
    Ok(ScalingFit {
        metric: metric.to_string(),
        log_power,
        exponent: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        exponent_stderr: fit.slope_stderr,
        excluded: ns.len() - grid.len(),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid() -> Vec<f64> {
        (12..=20).step_by(2).map(|e| 2f64.powi(e)).collect()
    }

    #[test]
    fn constant_metric_has_zero_slope() {
        let ns = grid();
        let f = fit_scaling("c", &ns, &vec![3.0; ns.len()], 0.0).unwrap();
        assert!(f.exponent.abs() < 0.02);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_factor_is_divided_out() {
        let ns = grid();
        let ys: Vec<f64> = ns.iter().map(|n| 2.0 * (n.ln() / n).powf(1.0 / 3.0)).collect();
        let f = fit_scaling("wait", &ns, &ys, 1.0 / 3.0).unwrap();
        assert!((f.exponent + 1.0 / 3.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn short_or_narrow_grids_are_rejected() {
        assert!(fit_scaling("m", &[1e3, 1e4, 1e5], &[1.0, 2.0, 3.0], 0.0).is_err());
        assert!(fit_scaling("m", &[100.0, 200.0, 400.0, 800.0], &[1.0; 4], 0.0).is_err());
    }

    #[test]
    fn nonpositive_values_are_excluded() {
        let ns: Vec<f64> = (2..=8).map(|e| 10f64.powi(e)).collect();
        let mut ys: Vec<f64> = ns.iter().map(|n| n.powf(-0.5)).collect();
        ys[3] = 0.0;
        ys[4] = f64::NAN;
        let f = fit_scaling("m", &ns, &ys, 0.0).unwrap();
        assert_eq!(f.excluded, 2);
        assert!((f.exponent + 0.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn recovers_power_laws(p in -2.0f64..2.0, c in 0.01f64..100.0) {
            let ns = grid();
            let ys: Vec<f64> = ns.iter().map(|n| c * n.powf(p)).collect();
            let f = fit_scaling("m", &ns, &ys, 0.0).unwrap();
            prop_assert!((f.exponent - p).abs() < 0.01);
        }
    }
}
