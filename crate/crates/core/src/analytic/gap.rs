//! Difference between the 2D and 3D far-field capacity shapes.

/// g(x) = (1 - (x/K)^2)/x - (1 - (x/L)^3)/x^2.
pub fn capacity_gap_g(x: f64, k: f64, l: f64) -> f64 {
    (1.0 - (x / k).powi(2)) / x - (1.0 - (x / l).powi(3)) / (x * x)
}
