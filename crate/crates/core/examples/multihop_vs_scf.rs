//! Per-node SCF rate near the station against the multi-hop baseline R/n.
//!
//! cargo run --release --example multihop_vs_scf

use uavscf::experiments::{sweep, SweepSpec, SweepVariable};
use uavscf::simcore::{ObserverPlan, SimOptions, TrialKind};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let base = NetworkConfig { s: 1.0, v: 1.0, t0: 3.5, h: 0.001, c2: 1.0, c6: 3.3322, dim: Dimension::TwoD, ..Default::default() };
    let spec = SweepSpec {
        variable: SweepVariable::N,
        values: vec![4096.0, 16384.0, 65536.0, 262144.0],
        trials: 3,
        metrics: Vec::new(),
        output: None,
        kind: TrialKind::Scf,
        options: SimOptions {
            observers: ObserverPlan { bins: 3, per_bin: 5, range: Some((0.0, 0.3)), ..Default::default() },
            delay_samples: 1,
            ..Default::default()
        },
    };
    for row in sweep(&spec, &base)?.rows {
        let ratio = row.scf_to_multihop.unwrap_or(f64::NAN);
        println!("n {:7}  SCF/multi-hop {:9.1}  ratio * ln n / n {:.3}", row.value, ratio, ratio * row.value.ln() / row.value);
    }
    Ok(())
}
