use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::analytic::per_hop_rate;
use crate::config::{Dimension, NetworkConfig};
use crate::error::Result;
use crate::geometry::{cell_grid, sample_network_trial, CellIndex, Point};

const DENSE_CELL_LIMIT: usize = 1 << 22;

/// Straight-line cell routing towards the station under TDMA.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultihopReport {
    /// Per-hop rate R.
    pub rate: f64,
    pub flows: usize,
    /// Flows delivered through the station cell.
    pub bottleneck_flows: usize,
    pub per_node_rate: f64,
    /// Most flows relayed by any cell other than the station cell.
    pub max_relay_load: usize,
    pub mean_hops: f64,
    /// Cells sharing one time slot: 27 (3D) or 9 (2D).
    pub tdma_groups: usize,
}

/// Cells visited after `a` on the straight line to `b`, each step to one of
/// the 26 (3D) or 8 (2D) neighbors.
pub(crate) fn line_cells(a: CellIndex, b: CellIndex) -> Vec<CellIndex> {
    let d = [b.i - a.i, b.j - a.j, b.k - a.k];
    let steps = d.iter().map(|v| v.abs()).max().unwrap_or(0);
    (1..=steps)
        .map(|t| {
            let at = |start: i64, delta: i64| start + ((delta * t) as f64 / steps as f64).round() as i64;
            CellIndex { i: at(a.i, d[0]), j: at(a.j, d[1]), k: at(a.k, d[2]) }
        })
        .collect()
}

/// Routes one flow per position to the station cell.
pub fn multihop_from_positions(cfg: &NetworkConfig, positions: &[Point]) -> Result<MultihopReport> {
    let grid = cell_grid(cfg)?;
    let station = grid.station_cell();
    // dense counters unless the grid is too fine to allocate one per cell
    let dense = grid.cell_count() <= DENSE_CELL_LIMIT;
    let mut counts = vec![0usize; if dense { grid.cell_count() } else { 0 }];
    let mut sparse: HashMap<usize, usize> = HashMap::new();
    let mut hops = 0usize;
    for &p in positions {
        let path = line_cells(grid.cell_of(p), station);
        hops += path.len();
        for c in path.iter().take(path.len().saturating_sub(1)) {
            let idx = grid.linear(*c);
            if dense {
                counts[idx] += 1;
            } else {
                *sparse.entry(idx).or_default() += 1;
            }
        }
    }
    let max_relay_load = counts.iter().chain(sparse.values()).copied().max().unwrap_or(0);
    let rate = per_hop_rate(cfg)?;
    let flows = positions.len();
    let bottleneck_flows = flows;
    Ok(MultihopReport {
        rate,
        flows,
        bottleneck_flows,
        per_node_rate: if bottleneck_flows > 0 { rate / bottleneck_flows as f64 } else { rate },
        max_relay_load,
        mean_hops: if flows > 0 { hops as f64 / flows as f64 } else { 0.0 },
        tdma_groups: match cfg.dim {
            Dimension::ThreeD => 27,
            Dimension::TwoD => 9,
        },
    })
}

/// Multi-hop baseline on the network of trial `trial`.
pub fn run_multihop_baseline(cfg: &NetworkConfig, trial: u64) -> Result<MultihopReport> {
    cfg.validate()?;
    let uavs = sample_network_trial(cfg, trial);
    multihop_from_positions(cfg, &uavs.iter().map(|u| u.position).collect::<Vec<_>>())
}
