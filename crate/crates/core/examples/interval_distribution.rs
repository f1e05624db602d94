//! Inter-return gaps seen by observers, tested against the uniform-spacing law.
//!
//! cargo run --release --example interval_distribution

use uavscf::analytic::{critical_ranges, interval_cdf, interval_mean};
use uavscf::simcore::{run_trials, ObserverPlan, SimOptions, TrialKind};
use uavscf::stats::ks_uniform;
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let cfg = NetworkConfig { n: 100_000, s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c0: 0.001, c5: 0.001, c4: 2.0 * 3f64.sqrt(), dim: Dimension::ThreeD, ..Default::default() };
    let cr = critical_ranges(&cfg)?;
    let opts = SimOptions {
        observers: ObserverPlan { bins: 4, per_bin: 5, range: Some((cr.x1_star, cr.x2_star.unwrap_or(1.0))), ..Default::default() },
        record_gaps: true,
        delay_samples: 1,
        multihop: false,
        ..Default::default()
    };
    let reports = run_trials(&cfg, &opts, TrialKind::Scf, 2)?;
    for w in reports[0].gaps.iter().take(5) {
        let mean = w.gaps.iter().sum::<f64>() / w.gaps.len() as f64;
        println!("x {:.3}: k {:4}  mean gap {:.5} s  (uniform spacing {:.5} s)", w.x, w.k, mean, interval_mean(w.k as u32, w.window));
    }
    // probability integral transform: uniform when gaps follow 1 - (1 - w/T)^k
    let pit: Vec<f64> = reports
        .iter()
        .flat_map(|r| &r.gaps)
        .flat_map(|w| w.gaps.iter().map(move |&g| interval_cdf(g, w.k as f64, w.window)))
        .collect();
    println!("{} gaps, KS statistic {:.4}", pit.len(), ks_uniform(&pit));
    Ok(())
}
