use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::index::{AngleIndex, ColumnIndex, DirectionIndex, StripIndex};
use super::ledger::{credit_encounters, exact_mean_wait, next_entry, ScfLedger};
use super::observers::{station_distance, Observer};
use super::schedule::{build_schedule, travel_time, Schedule};
use super::{ManeuverPolicy, RegionMode, SimOptions};
use crate::analytic::{critical_ranges, CriticalRanges, Regime};
use crate::config::{Dimension, NetworkConfig};
use crate::error::Result;
use crate::geometry::{
    cell_grid, encounters, returning_trajectory, sample_network_trial, CellGrid, Phase, Point, Trajectory, Uav,
};

/// A returner crossing an observer's neighborhood during the first period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawEvent {
    pub returner: usize,
    pub t_in: f64,
    pub t_out: f64,
    pub phase: Phase,
}

/// Everything measured for one observer in one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverOutcome {
    pub observer: Observer,
    pub regime: Option<Regime>,
    /// Returners inside the shaded region behind the neighborhood.
    pub shaded_count: usize,
    /// Distinct returners crossing on their way back, per period.
    pub k_return: usize,
    /// Distinct returners crossing during their maneuver, per period.
    pub k_maneuver: usize,
    pub events: Vec<RawEvent>,
    pub ledger: ScfLedger,
    /// Credited share of the analysis window, in [0, 1].
    pub coverage: f64,
    pub mean_wait_exact: Option<f64>,
    /// Inter-entry gaps of one period (empty unless recorded).
    pub gaps: Vec<f64>,
    /// Length of the window the gaps are spread over.
    pub gap_window: f64,
    /// UAVs sharing the observer's cell, the observer included.
    pub cell_population: u32,
    pub per_node_share: f64,
    /// Neighborhood lies entirely inside the inscribed region (and above ground).
    pub interior: bool,
}

enum ReturnIndex {
    Direction(DirectionIndex),
    Angle(AngleIndex),
}

enum ManeuverIndex {
    None,
    Column(ColumnIndex),
    Strip(StripIndex),
}

/// One sampled network with its schedule and lookup structures.
pub struct Population {
    pub cfg: NetworkConfig,
    pub opts: SimOptions,
    pub trial: u64,
    pub j: f64,
    pub uavs: Vec<Uav>,
    /// Indices into `uavs` of the UAVs that act as returners.
    pub returners: Vec<usize>,
    /// Timing of each returner, parallel to `returners`.
    pub schedule: Schedule,
    pub critical: Option<CriticalRanges>,
    pub grid: CellGrid,
    /// Sorted linear cell index of every sampled UAV.
    cells: Vec<usize>,
    r: f64,
    /// Returner positions relative to the station (3D) or plane center (2D).
    rel: Vec<Point>,
    returns: ReturnIndex,
    maneuvers: ManeuverIndex,
}

impl Population {
    /// Samples trial `trial` of `cfg` with maneuver length `j`.
    pub fn new(cfg: &NetworkConfig, opts: &SimOptions, trial: u64, j: f64) -> Result<Self> {
        opts.validate()?;
        let cfg = NetworkConfig { j, ..cfg.clone() };
        cfg.validate()?;
        let uavs = sample_network_trial(&cfg, trial);
        let radius = cfg.radius();
        let returners: Vec<usize> = match opts.region {
            RegionMode::Full => (0..uavs.len()).collect(),
            RegionMode::Inscribed => {
                (0..uavs.len()).filter(|&i| station_distance(&cfg, uavs[i].position) <= radius).collect()
            }
        };
        let critical = critical_ranges(&cfg).ok();
        let x1 = critical.as_ref().map_or(0.0, |c| c.x1_star);
        let maneuvers_of = |u: &Uav| -> f64 {
            if j <= 0.0 {
                return 0.0;
            }
            match opts.maneuver_policy {
                ManeuverPolicy::All => j,
                ManeuverPolicy::OutsideCritical if station_distance(&cfg, u.position) > x1 => j,
                ManeuverPolicy::OutsideCritical => 0.0,
            }
        };
        let members: Vec<Uav> = returners.iter().map(|&i| uavs[i]).collect();
        let schedule = build_schedule(&cfg, &members, maneuvers_of, opts.return_timing, opts.periods)?;
        let rel: Vec<Point> = members
            .iter()
            .map(|u| match cfg.dim {
                Dimension::ThreeD => u.position,
                Dimension::TwoD => Point::new(u.position.x, u.position.y, 0.0),
            })
            .collect();
        let returns = match cfg.dim {
            Dimension::ThreeD => ReturnIndex::Direction(DirectionIndex::new(&rel)),
            Dimension::TwoD => ReturnIndex::Angle(AngleIndex::new(&rel)),
        };
        let r = cfg.neighborhood_radius();
        let moving: Vec<(usize, Point)> = schedule
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.maneuver > 0.0)
            .map(|(slot, _)| (slot, members[slot].position))
            .collect();
        let maneuvers = if moving.is_empty() {
            ManeuverIndex::None
        } else {
            match cfg.dim {
                Dimension::ThreeD => ManeuverIndex::Column(ColumnIndex::new(&moving, cfg.s, r.max(cfg.s / 512.0))),
                Dimension::TwoD => ManeuverIndex::Strip(StripIndex::new(&moving)),
            }
        };
        let grid = cell_grid(&cfg)?;
        let mut cells: Vec<usize> = uavs.iter().map(|u| grid.linear(grid.cell_of(u.position))).collect();
        cells.sort_unstable();
        Ok(Self { cfg, opts: opts.clone(), trial, j, uavs, returners, schedule, critical, grid, cells, r, rel, returns, maneuvers })
    }

    pub fn neighborhood_radius(&self) -> f64 {
        self.r
    }

    /// Sampled UAVs in the cell containing `p`.
    pub fn cell_population(&self, p: Point) -> u32 {
        let c = self.grid.linear(self.grid.cell_of(p));
        let lo = self.cells.partition_point(|&x| x < c);
        let hi = self.cells.partition_point(|&x| x <= c);
        (hi - lo) as u32
    }

    /// Number of returners that fly the maneuver.
    pub fn maneuvering(&self) -> usize {
        self.schedule.entries.iter().filter(|e| e.maneuver > 0.0).count()
    }

    /// Mean monitoring time given up by maneuvering UAVs, and the largest
    /// deviation of any single loss from 2J/v.
    pub fn monitoring_loss(&self) -> Option<(f64, f64)> {
        let target = 2.0 * self.j / self.cfg.v;
        let losses: Vec<f64> = self
            .schedule
            .entries
            .iter()
            .zip(&self.returners)
            .filter(|(e, _)| e.maneuver > 0.0)
            .map(|(e, &i)| {
                let plain_start = e.dispatch + self.cfg.t0 - travel_time(&self.cfg, self.uavs[i].position, 0.0);
                plain_start - e.return_start
            })
            .collect();
        if losses.is_empty() {
            return None;
        }
        // summing the small deviations keeps the mean free of accumulated rounding
        let mean = target + losses.iter().map(|l| l - target).sum::<f64>() / losses.len() as f64;
        let worst = losses.iter().map(|l| (l - target).abs()).fold(0.0, f64::max);
        Some((mean, worst))
    }

    /// First-period trajectory of returner slot `slot`.
    pub fn trajectory(&self, slot: usize) -> Trajectory {
        let e = &self.schedule.entries[slot];
        returning_trajectory(&self.uavs[self.returners[slot]], e.return_start, e.maneuver, &self.cfg)
    }

    /// Returner slots whose trajectory may cross the neighborhood of `c`, and
    /// the number of returners in the shaded region behind it.
    fn candidates(&self, c: Point, x: f64, skip: Option<usize>) -> (Vec<usize>, usize) {
        let r = self.r;
        let l = self.cfg.radius();
        let mut slots = Vec::new();
        let mut shaded = 0usize;
        let skip_slot = |slot: usize| skip == Some(self.uavs[self.returners[slot]].id);
        let rel_c = match self.cfg.dim {
            Dimension::ThreeD => c,
            Dimension::TwoD => Point::new(c.x, c.y, 0.0),
        };
        if x <= r {
            for slot in 0..self.rel.len() {
                if skip_slot(slot) {
                    continue;
                }
                slots.push(slot);
                if self.rel[slot].norm() <= l {
                    shaded += 1;
                }
            }
        } else {
            let theta = (r / x).asin();
            let cos_t = theta.cos();
            let dir = rel_c * (1.0 / x);
            let mut visit = |slot: usize| {
                if skip_slot(slot) {
                    return;
                }
                let p = self.rel[slot];
                let d = p.norm();
                if d <= 0.0 {
                    return;
                }
                let cosang = p.dot(dir) / d;
                if cosang >= cos_t - 1e-12 {
                    slots.push(slot);
                    if cosang >= cos_t && d >= x - r && d <= l {
                        shaded += 1;
                    }
                }
            };
            match &self.returns {
                ReturnIndex::Direction(idx) => idx.for_each_within(dir, theta, &mut visit),
                ReturnIndex::Angle(idx) => idx.for_each_within(dir, theta, &mut visit),
            }
        }
        match &self.maneuvers {
            ManeuverIndex::None => {}
            ManeuverIndex::Column(idx) => idx.for_each_near(c.x, c.y, r, |slot| {
                if !skip_slot(slot) {
                    slots.push(slot)
                }
            }),
            ManeuverIndex::Strip(idx) => idx.for_each_near(c.y, r, |slot| {
                if !skip_slot(slot) {
                    slots.push(slot)
                }
            }),
        }
        slots.sort_unstable();
        slots.dedup();
        (slots, shaded)
    }

    /// First-period encounters of returners with the neighborhood of `obs`.
    pub fn raw_events(&self, obs: &Observer) -> (Vec<RawEvent>, usize) {
        let (slots, shaded) = self.candidates(obs.position, obs.x, obs.uav);
        let trajectories: Vec<(usize, Trajectory)> =
            slots.iter().map(|&slot| (self.uavs[self.returners[slot]].id, self.trajectory(slot))).collect();
        let events = encounters(obs.id, obs.position, trajectories.iter().map(|(id, t)| (*id, t)), self.r)
            .into_iter()
            .map(|e| RawEvent { returner: e.returner_id, t_in: e.t_in, t_out: e.t_out, phase: e.phase })
            .collect();
        (events, shaded)
    }

    /// Runs the SCF accounting for one observer. `rng` drives the data instants.
    pub fn observe<R: Rng + ?Sized>(&self, obs: &Observer, rng: &mut R) -> ObserverOutcome {
        let cfg = &self.cfg;
        let (events, shaded_count) = self.raw_events(obs);
        let distinct = |keep: fn(Phase) -> bool| {
            let mut ids: Vec<usize> = events.iter().filter(|e| keep(e.phase)).map(|e| e.returner).collect();
            ids.sort_unstable();
            ids.dedup();
            ids.len()
        };
        let k_return = distinct(|p| matches!(p, Phase::Return | Phase::ReturnInPlane));
        let k_maneuver = distinct(|p| p == Phase::Maneuver);

        let period = self.schedule.period;
        let (lo, hi) = self.schedule.window();
        let cycles = self.schedule.periods;
        let mut expanded = Vec::with_capacity(events.len() * (cycles + 1));
        for m in 0..=cycles {
            let shift = m as f64 * period;
            expanded.extend(events.iter().map(|e| (e.t_in + shift, e.t_out + shift, e.returner, e.phase)));
        }
        let credited = credit_encounters(&expanded, lo, hi);
        let served_time: f64 = credited.iter().map(|c| c.end - c.start).sum();
        let coverage = (served_time / (hi - lo)).min(1.0);
        let mut entries: Vec<f64> = expanded.iter().map(|e| e.0).collect();
        entries.sort_by(f64::total_cmp);

        let carry = match cfg.dim {
            Dimension::ThreeD => obs.x / cfg.v,
            Dimension::TwoD => (obs.x + cfg.h) / cfg.v,
        };
        let mut ledger = ScfLedger { served_time, handoffs: credited.len(), ..Default::default() };
        let count = Poisson::new(self.opts.delay_samples as f64).map_or(0, |p| p.sample(rng) as usize);
        for _ in 0..count {
            let t = rng.random_range(lo..hi);
            match next_entry(&entries, t) {
                Some(w) => {
                    ledger.wait_samples.push(w);
                    ledger.delivery_delays.push(w + carry);
                }
                None => ledger.censored += 1,
            }
        }

        let gap_window = cfg.dispatch_window();
        let gaps = if self.opts.record_gaps { period_gaps(&events, period, cfg.dim) } else { Vec::new() };

        let cell_population = self.cell_population(obs.position) + u32::from(obs.uav.is_none());
        let interior = match cfg.dim {
            Dimension::ThreeD => obs.position.z >= self.r && obs.x + self.r <= cfg.radius(),
            Dimension::TwoD => obs.x + self.r <= cfg.radius(),
        };
        ObserverOutcome {
            observer: *obs,
            regime: self.critical.as_ref().map(|c| c.classify(obs.x)),
            shaded_count,
            k_return,
            k_maneuver,
            events,
            ledger,
            coverage,
            mean_wait_exact: exact_mean_wait(&entries, lo, hi),
            gaps,
            gap_window,
            cell_population,
            per_node_share: coverage / f64::from(cell_population),
            interior,
        }
    }
}

/// Gaps between consecutive entries within one period. In 3D the entry marks
/// are uniform over the whole period and the internal spacings are kept; in 2D
/// they avoid a dead window of 2h/v, which shows up as the largest circular
/// spacing and is dropped.
fn period_gaps(events: &[RawEvent], period: f64, dim: Dimension) -> Vec<f64> {
    let mut marks: Vec<f64> = events.iter().map(|e| e.t_in.rem_euclid(period)).collect();
    marks.sort_by(f64::total_cmp);
    if marks.len() < 2 {
        return Vec::new();
    }
    let internal: Vec<f64> = marks.windows(2).map(|w| w[1] - w[0]).collect();
    match dim {
        Dimension::ThreeD => internal,
        Dimension::TwoD => {
            let mut circular = internal;
            circular.push(marks[0] + period - marks[marks.len() - 1]);
            let (widest, _) = circular
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &g)| if g > best.1 { (i, g) } else { best });
            circular.remove(widest);
            circular
        }
    }
}
