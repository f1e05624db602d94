//! A maneuver of length J lifts far observers to saturated coverage.
//!
//! cargo run --release --example mobility_control

use std::f64::consts::PI;

use uavscf::analytic::{critical_ranges, mobility_encounters};
use uavscf::simcore::{aggregate, run_trials, ObserverPlan, SimOptions, TrialKind};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let c = 0.0292;
    let cfg = NetworkConfig {
        n: 1 << 18, s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: c, c5: c, c4: 2.0 * 3f64.sqrt(),
        kappa: 3.0 * PI / 4.0, j: 0.4, dim: Dimension::ThreeD, ..Default::default()
    };
    let cr = critical_ranges(&cfg)?;
    let x2 = cr.x2_star.unwrap_or(cr.x1_star);
    let m = mobility_encounters(&cfg, cfg.j)?;
    println!("x2* {x2:.3}  N(J) {:.1}  threshold {:.1}  saturates {}  loss {:.2} s", m.n_j, m.threshold, m.saturates, m.monitoring_loss);
    let opts = SimOptions {
        observers: ObserverPlan { bins: 3, per_bin: 5, range: Some((x2, 1.0)), maneuver_clearance: true, ..Default::default() },
        delay_samples: 1,
        multihop: false,
        ..Default::default()
    };
    for kind in [TrialKind::Scf, TrialKind::Mobility] {
        let reps = run_trials(&cfg, &opts, kind, 4)?;
        let agg = aggregate(&reps);
        for b in &agg.bins {
            println!("{kind:?} x {:.3}: coverage {:.3}  maneuver crossings {:.1}", b.x.mean, b.coverage.mean, b.k_maneuver.mean);
        }
        if let Some(loss) = reps[0].monitoring_loss {
            println!("monitoring time lost per maneuvering UAV {loss:.6} s");
        }
    }
    Ok(())
}
