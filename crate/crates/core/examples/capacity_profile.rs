//! Simulated SCF coverage per distance bin next to the closed-form cell share.
//!
//! cargo run --release --example capacity_profile

use uavscf::analytic::critical_ranges;
use uavscf::experiments::profile_rows;
use uavscf::simcore::{aggregate, run_trials, ObserverPlan, SimOptions, TrialKind};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let cfg = NetworkConfig { n: 100_000, s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: 3e-5, c5: 3e-5, c4: 2.0 * 3f64.sqrt(), dim: Dimension::ThreeD, ..Default::default() };
    let cr = critical_ranges(&cfg)?;
    println!("x1* {:.4}  x2* {:?}  k_th {:.1}", cr.x1_star, cr.x2_star, cr.k_th);
    let opts = SimOptions {
        observers: ObserverPlan { bins: 10, per_bin: 5, range: Some((0.0, 0.95)), ..Default::default() },
        delay_samples: 1,
        multihop: false,
        ..Default::default()
    };
    let agg = aggregate(&run_trials(&cfg, &opts, TrialKind::Scf, 40)?);
    for row in profile_rows(&cfg, &agg) {
        println!(
            "x {:.3}  {:15}  coverage {:.4}  closed form {:.4}",
            row.x.unwrap_or(f64::NAN),
            row.regime.unwrap_or_default(),
            row.coverage.unwrap_or(f64::NAN),
            row.cell_share_analytic.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
