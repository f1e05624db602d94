//! Returners crossing an observer's neighborhood against the closed-form k_u(x).
//!
//! cargo run --release --example encounter_oracle

use uavscf::analytic::critical_ranges;
use uavscf::simcore::{aggregate, run_trials, ObserverPlan, SimOptions, TrialKind};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let cfg = NetworkConfig { n: 100_000, s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: 0.001, c5: 0.001, c4: 2.0 * 3f64.sqrt(), dim: Dimension::ThreeD, ..Default::default() };
    let cr = critical_ranges(&cfg)?;
    let opts = SimOptions {
        observers: ObserverPlan { bins: 6, per_bin: 5, range: Some((cr.x1_star + cr.neighborhood_radius, 0.95)), ..Default::default() },
        delay_samples: 1,
        multihop: false,
        ..Default::default()
    };
    let agg = aggregate(&run_trials(&cfg, &opts, TrialKind::Scf, 20)?);
    println!("{:>8} {:>12} {:>10} {:>7}", "x", "simulated", "k_u", "ratio");
    for b in &agg.bins {
        println!(
            "{:8.3} {:8.2}±{:<4.2} {:10.2} {:7.3}",
            b.x.mean,
            b.shaded_count.mean,
            b.shaded_count.stderr,
            b.ku_analytic.mean,
            b.shaded_count.mean / b.ku_analytic.mean
        );
    }
    Ok(())
}
