use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::multihop::multihop_from_positions;
use super::observers::place_observers;
use super::population::Population;
use super::report::{bin_table, GapWindow, ObserverRecord, SimReport};
use super::SimOptions;
use crate::analytic::n_of_j;
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::rng::{stream, Purpose};

/// Which trajectories a trial flies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialKind {
    /// Plain returns, J ignored.
    #[default]
    Scf,
    /// Returns preceded by the maneuver of length `cfg.j`.
    Mobility,
}

fn run(cfg: &NetworkConfig, opts: &SimOptions, trial: u64, j: f64) -> Result<SimReport> {
    let pop = Population::new(cfg, opts, trial, j)?;
    let cfg = &pop.cfg;
    let observers = place_observers(cfg, &opts.observers, trial, &pop.uavs, &pop.returners, j);
    let mut rng = stream(cfg.seed, trial, Purpose::DataInstants);
    let outcomes: Vec<_> = observers.iter().map(|o| pop.observe(o, &mut rng)).collect();

    let records: Vec<ObserverRecord> = outcomes.iter().map(|o| ObserverRecord::from_outcome(cfg, trial, o)).collect();
    let gaps = if opts.record_gaps {
        outcomes
            .iter()
            .filter(|o| !o.gaps.is_empty())
            .map(|o| GapWindow {
                trial,
                observer: o.observer.id,
                x: o.observer.x,
                k: o.gaps.len() + 1,
                window: o.gap_window,
                gaps: o.gaps.clone(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let pooled: Vec<f64> = outcomes.iter().flat_map(|o| o.ledger.delivery_delays.iter().copied()).collect();
    let mean_delay = (!pooled.is_empty()).then(|| pooled.iter().sum::<f64>() / pooled.len() as f64);
    let waits: Vec<f64> = outcomes.iter().flat_map(|o| o.ledger.wait_samples.iter().copied()).collect();
    let mean_wait = (!waits.is_empty()).then(|| waits.iter().sum::<f64>() / waits.len() as f64);
    let censored = outcomes.iter().map(|o| o.ledger.censored).sum();
    let multihop = if opts.multihop {
        let positions: Vec<_> = pop.uavs.iter().map(|u| u.position).collect();
        Some(multihop_from_positions(cfg, &positions)?)
    } else {
        None
    };
    let loss = pop.monitoring_loss();
    let (lo, hi) = opts.observers.range.unwrap_or((0.0, cfg.radius()));
    let bins = bin_table(&records.iter().collect::<Vec<_>>(), opts.observers.bins, lo, hi);
    Ok(SimReport {
        seed: cfg.seed,
        trial,
        config: cfg.clone(),
        options: opts.clone(),
        returners: pop.returners.len(),
        maneuvering: pop.maneuvering(),
        monitoring_loss: loss.map(|l| l.0),
        monitoring_loss_error: loss.map(|l| l.1),
        n_j_analytic: (j > 0.0).then(|| n_of_j(cfg, j)),
        records,
        gaps,
        mean_delay,
        mean_wait,
        censored,
        multihop,
        bins,
    })
}

/// One SCF trial with plain returning trajectories; `cfg.j` is ignored.
pub fn run_scf_trial(cfg: &NetworkConfig, opts: &SimOptions, trial: u64) -> Result<SimReport> {
    run(cfg, opts, trial, 0.0)
}

/// One trial in which UAVs fly the maneuver of length `cfg.j` before returning.
pub fn run_mobility_trial(cfg: &NetworkConfig, opts: &SimOptions, trial: u64) -> Result<SimReport> {
    run(cfg, opts, trial, cfg.j)
}

/// Worker count from `UAVSCF_THREADS`, or rayon's default.
pub(crate) fn thread_cap() -> Option<usize> {
    std::env::var("UAVSCF_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0)
}

/// Runs `f` on a pool capped by `UAVSCF_THREADS`.
pub(crate) fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Trials `0..trials` in parallel, returned in trial order.
pub fn run_trials(cfg: &NetworkConfig, opts: &SimOptions, kind: TrialKind, trials: u64) -> Result<Vec<SimReport>> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    with_pool(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| match kind {
                TrialKind::Scf => run_scf_trial(cfg, opts, t),
                TrialKind::Mobility => run_mobility_trial(cfg, opts, t),
            })
            .collect::<Result<Vec<_>>>()
    })?
}
