use serde::{Deserialize, Serialize};

use crate::geometry::Phase;

/// A piece of encounter time credited to one returner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CreditedInterval {
    pub returner_id: usize,
    pub start: f64,
    pub end: f64,
    pub phase: Phase,
}

/// SCF accounting for one observer over the analysis window.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScfLedger {
    /// Credited encounter time inside the window, seconds.
    pub served_time: f64,
    /// Number of credited pieces, i.e. receiver changes.
    pub handoffs: usize,
    /// Waiting times of sampled data instants, seconds.
    pub wait_samples: Vec<f64>,
    /// Waiting plus carry time of the same instants, seconds.
    pub delivery_delays: Vec<f64>,
    /// Data instants with no later entry inside the simulated horizon.
    pub censored: usize,
}

/// One-receiver rule. Events are `(t_in, t_out, returner_id, phase)`; the
/// earliest entrant (ties by lower id) holds the link until it leaves, and a
/// returner still inside afterwards takes over from that moment. The result is
/// clipped to `[lo, hi]` and never overlaps.
pub fn credit_encounters(events: &[(f64, f64, usize, Phase)], lo: f64, hi: f64) -> Vec<CreditedInterval> {
    let mut order: Vec<usize> = (0..events.len()).collect();
    order.sort_by(|&a, &b| events[a].0.total_cmp(&events[b].0).then(events[a].2.cmp(&events[b].2)));
    let mut out = Vec::new();
    let mut busy_until = f64::NEG_INFINITY;
    for i in order {
        let (t_in, t_out, returner_id, phase) = events[i];
        let start = t_in.max(busy_until).max(lo);
        let end = t_out.min(hi);
        if end > start {
            out.push(CreditedInterval { returner_id, start, end, phase });
        }
        busy_until = busy_until.max(t_out);
    }
    out
}

/// Mean time from a uniform instant in `[lo, hi]` to the next entry, given
/// sorted entry times. `None` if some instant has no later entry.
pub fn exact_mean_wait(entries: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let first = entries.partition_point(|&t| t <= lo);
    let mut prev = lo;
    let mut acc = 0.0;
    for &t in &entries[first..] {
        if prev >= hi {
            break;
        }
        let seg_end = t.min(hi);
        // instants in [prev, seg_end] wait until t
        acc += ((t - prev).powi(2) - (t - seg_end).powi(2)) / 2.0;
        prev = t;
    }
    (prev >= hi).then(|| acc / (hi - lo))
}

/// Time from `t` to the first entry strictly after it.
pub(crate) fn next_entry(entries: &[f64], t: f64) -> Option<f64> {
    let i = entries.partition_point(|&e| e <= t);
    entries.get(i).map(|&e| e - t)
}
