use serde::{Deserialize, Serialize};

use super::ReturnTiming;
use crate::config::{Dimension, NetworkConfig};
use crate::error::{Error, Result};
use crate::geometry::{Point, Uav};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub dispatch: f64,
    /// Time the UAV leaves its monitor position (maneuver first, if any).
    pub return_start: f64,
    pub arrival: f64,
    /// Flight time from monitor position back to the station.
    pub travel: f64,
    /// Maneuver length flown before returning (0 if none).
    pub maneuver: f64,
}

/// First-period timing of every UAV. Later periods repeat it shifted by `period`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub entries: Vec<ScheduleEntry>,
    pub period: f64,
    pub periods: usize,
    /// End of the simulated horizon, `periods * period`.
    pub horizon: f64,
    /// Length of the discarded warm-up, one period.
    pub warmup: f64,
}

impl Schedule {
    /// Analysis window after warm-up.
    pub fn window(&self) -> (f64, f64) {
        (self.warmup, self.horizon)
    }
}

/// Return flight time from `p` including a maneuver of length `j` (path 2j).
pub fn travel_time(cfg: &NetworkConfig, p: Point, j: f64) -> f64 {
    let path = match cfg.dim {
        Dimension::ThreeD => p.norm(),
        Dimension::TwoD => p.planar_norm() + cfg.h,
    };
    (path + 2.0 * j) / cfg.v
}

/// Sets each UAV's return so that it reaches the station at dispatch + t0
/// (minus the slack, if configured). `maneuver(uav)` gives that UAV's J.
pub fn build_schedule(
    cfg: &NetworkConfig,
    uavs: &[Uav],
    maneuver: impl Fn(&Uav) -> f64,
    timing: ReturnTiming,
    periods: usize,
) -> Result<Schedule> {
    let slack = match timing {
        ReturnTiming::EnergyExhaustion => 0.0,
        ReturnTiming::Slack { slack_s } => slack_s,
    };
    // in 2D the climb to the plane comes out of the same battery
    let climb = match cfg.dim {
        Dimension::ThreeD => 0.0,
        Dimension::TwoD => cfg.h / cfg.v,
    };
    let entries = uavs
        .iter()
        .map(|u| {
            let j = maneuver(u);
            let travel = travel_time(cfg, u.position, j);
            let return_start = u.dispatch + cfg.t0 - travel - slack;
            if return_start < u.dispatch + climb - 1e-9 * cfg.t0 {
                return Err(Error::Infeasible(format!(
                    "UAV {} needs {travel:.6} s to return (plus {slack} s slack) but flies only {} s",
                    u.id, cfg.t0
                )));
            }
            Ok(ScheduleEntry { dispatch: u.dispatch, return_start, arrival: return_start + travel, travel, maneuver: j })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Schedule {
        entries,
        period: cfg.t0,
        periods,
        horizon: periods as f64 * cfg.t0,
        warmup: cfg.t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_network;
    use crate::stats::ks_uniform;

    fn unit(dim: Dimension) -> NetworkConfig {
        NetworkConfig { n: 10_000, s: 1.0, v: 1.0, t0: 4.0, h: 0.2, dim, ..Default::default() }
    }

    #[test]
    fn far_corner_at_range_limit_takes_half_period() {
        // s at the range limit: the corner is exactly t0 v / 2 away
        let t0v = 4.0;
        let s = 3f64.sqrt() / 3.0 * t0v / 2.0;
        let cfg = NetworkConfig { s, ..unit(Dimension::ThreeD) };
        let corner = Uav { id: 0, position: Point::new(s, s, s), dispatch: 0.3 };
        let sched = build_schedule(&cfg, &[corner], |_| 0.0, ReturnTiming::EnergyExhaustion, 3).unwrap();
        assert!((sched.entries[0].travel - cfg.t0 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn station_uav_leaves_at_end_of_flight() {
        let cfg = unit(Dimension::ThreeD);
        let u = Uav { id: 0, position: Point::ORIGIN, dispatch: 1.25 };
        let sched = build_schedule(&cfg, &[u], |_| 0.0, ReturnTiming::EnergyExhaustion, 3).unwrap();
        assert_eq!(sched.entries[0].return_start, 1.25 + cfg.t0);
    }

    #[test]
    fn energy_budget_respected() {
        for dim in [Dimension::ThreeD, Dimension::TwoD] {
            let cfg = unit(dim);
            let uavs = sample_network(&cfg);
            for timing in [ReturnTiming::EnergyExhaustion, ReturnTiming::Slack { slack_s: 0.1 }] {
                let sched = build_schedule(&cfg, &uavs, |_| 0.3, timing, 3).unwrap();
                for e in &sched.entries {
                    assert!(e.arrival <= e.dispatch + cfg.t0 + 1e-12);
                    assert!(e.return_start >= e.dispatch);
                }
            }
        }
    }

    #[test]
    fn infeasible_slack_rejected() {
        let cfg = unit(Dimension::ThreeD);
        let u = Uav { id: 0, position: Point::new(1.0, 1.0, 1.0), dispatch: 0.0 };
        let err = build_schedule(&cfg, &[u], |_| 0.0, ReturnTiming::Slack { slack_s: 3.0 }, 3).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn return_marks_uniform_over_period() {
        let cfg = unit(Dimension::ThreeD);
        let uavs = sample_network(&cfg);
        let sched = build_schedule(&cfg, &uavs, |_| 0.0, ReturnTiming::EnergyExhaustion, 3).unwrap();
        let marks: Vec<f64> = sched.entries.iter().map(|e| e.return_start.rem_euclid(cfg.t0) / cfg.t0).collect();
        assert!(ks_uniform(&marks) < 0.05);
    }
}
