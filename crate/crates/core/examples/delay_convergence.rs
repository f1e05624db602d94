//! Mean delivery delay against n approaches the carry time 3L/(4v).
//!
//! cargo run --release --example delay_convergence

use uavscf::experiments::{delay_curve, delay_options, fit_scaling, DelayCurveSpec};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let base = NetworkConfig { s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: 0.1, c5: 0.1, c4: 2.0 * 3f64.sqrt(), dim: Dimension::ThreeD, ..Default::default() };
    let spec = DelayCurveSpec { ns: vec![1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18], trials: 4, options: delay_options() };
    let curve = delay_curve(&base, &spec)?;
    for r in curve.simulated() {
        println!(
            "n {:7}  delay {:.4} s  wait {:.4} s  bound {:.4} s",
            r.n.unwrap_or(0),
            r.mean_delay.unwrap_or(f64::NAN),
            r.mean_wait.unwrap_or(f64::NAN),
            r.bound_total.unwrap_or(f64::NAN)
        );
    }
    println!("asymptote {:.4} s", curve.asymptote);
    let (ns, waits): (Vec<f64>, Vec<f64>) =
        curve.simulated().filter_map(|r| Some((r.n? as f64, r.mean_wait?))).unzip();
    let fit = fit_scaling("mean_wait", &ns, &waits, 1.0 / 3.0)?;
    println!("waiting term ~ n^{:.3} (log n)^(1/3), R^2 {:.3}", fit.exponent, fit.r_squared);
    Ok(())
}
