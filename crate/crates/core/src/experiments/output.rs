//! CSV tables and JSON metadata sidecars.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::NetworkConfig;
use crate::error::Result;
use crate::rng::GENERATOR;

/// Build identity recorded in every sidecar.
pub fn git_describe() -> &'static str {
    env!("UAVSCF_GIT_DESCRIBE")
}

/// `SOURCE_DATE_EPOCH`, when set, pins timestamps and suppresses wall times
/// so that repeated runs write byte-identical files.
pub fn pinned_epoch() -> Option<u64> {
    std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.trim().parse().ok())
}

/// Seconds since the Unix epoch, or the pinned epoch.
pub fn timestamp() -> u64 {
    pinned_epoch().unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
}

/// Hex form of [`NetworkConfig::fingerprint`].
pub fn config_hash(cfg: &NetworkConfig) -> String {
    format!("{:016x}", cfg.fingerprint())
}

/// Wall clock of one study.
#[derive(Debug, Clone, Copy)]
pub struct StudyClock(Instant);

impl StudyClock {
    pub fn start() -> Self {
        Self(Instant::now())
    }

    /// Elapsed seconds, `None` when the clock is pinned.
    pub fn wall_time(&self) -> Option<f64> {
        pinned_epoch().is_none().then(|| self.0.elapsed().as_secs_f64())
    }
}

/// Metadata written next to every study table.
#[derive(Debug, Clone, Serialize)]
pub struct Sidecar<T: Serialize> {
    pub study: String,
    pub config: NetworkConfig,
    pub config_hash: String,
    /// Base seed; trial `t` draws from the stream keyed by (seed, t).
    pub seed: u64,
    pub trials: u64,
    pub generator: &'static str,
    pub git_describe: &'static str,
    pub wall_time_s: Option<f64>,
    /// Study-specific settings and summaries.
    pub details: T,
}

impl<T: Serialize> Sidecar<T> {
    pub fn new(study: &str, cfg: &NetworkConfig, trials: u64, clock: &StudyClock, details: T) -> Self {
        Self {
            study: study.to_string(),
            config: cfg.clone(),
            config_hash: config_hash(cfg),
            seed: cfg.seed,
            trials,
            generator: GENERATOR,
            git_describe: git_describe(),
            wall_time_s: clock.wall_time(),
            details,
        }
    }
}

/// Writes `rows` as RFC 4180 CSV with a header row.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes pretty JSON followed by a newline.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}
