//! Potential returners at each location of the normalized region, written as CSV.
//!
//! cargo run --release --example heatmap -- [out.csv]

use std::path::PathBuf;

use uavscf::experiments::{heatmap, normalized, write_csv};
use uavscf::{Dimension, NetworkConfig};

fn main() -> uavscf::Result<()> {
    let cfg = normalized(&NetworkConfig { n: 1 << 14, dim: Dimension::TwoD, ..Default::default() }, 5.0);
    let map = heatmap(&cfg, 0.5, 21, 0)?;
    for row in map.matrix_rows().iter().step_by(4) {
        println!("{}", row.iter().step_by(2).map(|c| format!("{c:6}")).collect::<String>());
    }
    let rc = &map.distance_correlation;
    println!("count vs distance: Spearman {:.3} (p {:.1e})", rc.rho, rc.p_value);
    if let Some(path) = std::env::args().nth(1).map(PathBuf::from) {
        write_csv(&path, &map.cells())?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
