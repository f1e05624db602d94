//! Closed-form thresholds and the capacity profile for the default scenario.
//!
//! cargo run --example critical_range

use uavscf::analytic::{analytic_report, critical_range_3d, Regime};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    for dim in [Dimension::ThreeD, Dimension::TwoD] {
        let cfg = NetworkConfig::with_dim(dim);
        let report = analytic_report(&cfg, 10, &[cfg.s / 4.0])?;
        let cr = &report.critical;
        println!("{dim}: n {}  r {:.2} m  k_th {:.2}", cfg.n, report.neighborhood_radius, cr.k_th);
        println!("  x1* {:.3} m  x2* {:?}  closed form {:?}", cr.x1_star, cr.x2_star, cr.x1_closed_form);
        for p in &report.capacity.points {
            let tag = match p.regime {
                Regime::WithinCritical => "saturated",
                Regime::Transition => "transition",
                Regime::OutsideCritical => "sparse",
            };
            println!("  x {:7.1} m  {tag:10}  k_u {:9.2}  per-node share {:?}", p.x, p.ku, p.per_node_share);
        }
        println!("  delay bound {:.2} s  (quadrature {:.2} s)", report.delay.closed_form.total, report.delay.quadrature.total);
    }

    // closed-form root of the cubic against bisection
    let root = critical_range_3d(1.0, 0.8)?;
    println!("L = 1, u = 0.8: bisection {:.12}  closed form {:?}", root.bisection, root.closed_form);
    Ok(())
}
