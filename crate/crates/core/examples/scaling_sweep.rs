//! Sweeps over t0 and over n: infeasible points are flagged, exponents fitted.
//!
//! cargo run --release --example scaling_sweep

use uavscf::experiments::{delay_options, sweep, Metric, SweepSpec, SweepVariable};
use uavscf::simcore::TrialKind;
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let base = NetworkConfig { n: 20_000, s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: 0.1, c5: 0.1, c4: 2.0 * 3f64.sqrt(), dim: Dimension::ThreeD, ..Default::default() };

    let by_t0 = SweepSpec {
        variable: SweepVariable::T0,
        values: vec![1.0, 3.0, 4.0, 6.0],
        trials: 2,
        metrics: Vec::new(),
        output: None,
        kind: TrialKind::Scf,
        options: delay_options(),
    };
    for r in sweep(&by_t0, &base)?.rows {
        println!("t0 {:.1}: {:11} share {:?}  delay {:?} {}", r.value, r.status, r.per_node_share, r.mean_delay, r.message);
    }

    let by_n = SweepSpec {
        variable: SweepVariable::N,
        values: (10..=18).step_by(2).map(|e| f64::from(1u32 << e)).collect(),
        metrics: vec![Metric::MeanWait, Metric::MeanDelay],
        ..by_t0
    };
    for f in sweep(&by_n, &base)?.fits {
        println!("{}: exponent {:.3} ± {:.3} after dividing (log n)^{:.3}", f.metric, f.exponent, f.exponent_stderr, f.log_power);
    }
    Ok(())
}
