//! Experiment configuration, orchestration and result files.
//!
//! Every experiment returns a flat list of [`ResultRecord`]s; a run passes
//! when every record does. Thresholds come from the config's tolerance map
//! with the defaults documented per experiment.

mod config;
mod coupling;
mod cylinder;
mod micro;
mod pde_checks;
mod presets;
mod record;
mod riemann;
mod stationary;
mod tail;

use std::time::Instant;

pub use config::{ExperimentConfig, ExperimentKind, Format, InitialProfile};
pub use presets::{acceptance_configs, CRITERIA};
pub use record::{emit, parse, render, ResultRecord, COLUMNS};

use crate::error::{Error, Result};

/// Collects records for one run, stamping seed, hash and (optionally) time.
pub(crate) struct Recorder<'a> {
    cfg: &'a ExperimentConfig,
    hash: String,
    start: Instant,
    out: Vec<ResultRecord>,
}

impl<'a> Recorder<'a> {
    fn new(cfg: &'a ExperimentConfig) -> Self {
        Recorder { cfg, hash: cfg.hash(), start: Instant::now(), out: Vec::new() }
    }

    pub(crate) fn push(&mut self, n: usize, statistic: &str, value: f64, target: f64, sigma: f64, pass: bool) {
        let seconds = if self.cfg.timing { self.start.elapsed().as_secs_f64() } else { 0.0 };
        self.out.push(ResultRecord {
            experiment: self.cfg.experiment.id().to_string(),
            seed: self.cfg.seed,
            n: n as u64,
            statistic: statistic.to_string(),
            value,
            target,
            sigma,
            pass,
            seconds,
            config_hash: self.hash.clone(),
        });
    }

    /// Record an indicator for a trend check.
    pub(crate) fn flag(&mut self, n: usize, statistic: &str, ok: bool) {
        self.push(n, statistic, f64::from(u8::from(ok)), 1.0, 0.0, ok);
    }
}

/// Run one experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let mut rec = Recorder::new(cfg);
    let ctx = |e: Error| match e {
        Error::ConfigInvalid(_) => e,
        other => Error::Experiment { experiment: cfg.experiment.id().to_string(), source: Box::new(other) },
    };
    match cfg.experiment {
        ExperimentKind::E1 => cylinder::limit_shape(cfg, &mut rec),
        ExperimentKind::E2 => riemann::run(cfg, &mut rec),
        ExperimentKind::E3 => stationary::stationarity(cfg, &mut rec),
        ExperimentKind::E4 => cylinder::local_statistics(cfg, &mut rec),
        ExperimentKind::E5 => coupling::invariants(cfg, &mut rec),
        ExperimentKind::E6 => tail::speed_tail(cfg, &mut rec),
        ExperimentKind::E7 => stationary::current(cfg, &mut rec),
        ExperimentKind::E8 => coupling::cylinder_vs_line(cfg, &mut rec),
        ExperimentKind::Oracle => micro::micro_oracle(cfg, &mut rec),
        ExperimentKind::Pde => pde_checks::run(cfg, &mut rec),
    }
    .map_err(ctx)?;
    Ok(rec.out)
}

/// Whether every record passed.
pub fn all_pass(records: &[ResultRecord]) -> bool {
    records.iter().all(|r| r.pass)
}

/// Sites of `[lo, hi)` occupied under the config's initial profile at scale `n`.
pub(crate) fn initial_sites(cfg: &ExperimentConfig, rng: &crate::Randomness, lo: i64, hi: i64, n: usize, class: usize) -> Vec<i64> {
    (lo..hi).filter(|&x| cfg.profile.occupied(rng, x, n, class)).collect()
}

/// `xs[i+1] <= xs[i]` for every `i`.
pub(crate) fn non_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0])
}

pub(crate) fn constant_density(cfg: &ExperimentConfig) -> Result<f64> {
    match cfg.profile {
        InitialProfile::Constant { rho } => Ok(rho),
        _ => Err(Error::ConfigInvalid(format!("{} needs a constant profile", cfg.experiment.id()))),
    }
}
