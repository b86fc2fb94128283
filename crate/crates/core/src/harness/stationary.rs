//! Product Bernoulli data on a slab: bulk statistics and currents.
//!
//! The restriction of the line dynamics to `(-inf, x]` is autonomous, so
//! the empty region right of the slab never matters. The empty region to the
//! left disturbs at most `kappa * T` sites per `T` steps; statistics are taken
//! right of that with a further buffer.

use rayon::prelude::*;

use super::{constant_density, initial_sites, ExperimentConfig, Recorder};
use crate::dynamics::{run_line, run_ring, step_positions};
use crate::error::{Error, Result};
use crate::stats::{current_identity, mean_sigma};
use crate::ParticleConfiguration;

fn bulk_start(cfg: &ExperimentConfig, width: usize, steps: usize) -> Result<i64> {
    let lo = (cfg.params.kappa() * steps as f64).ceil() as i64 + (cfg.opt("buffer", 0.05) * width as f64).ceil() as i64;
    if lo + 2 > width as i64 {
        return Err(Error::ConfigInvalid(format!("slab of width {width} has no bulk after {steps} steps")));
    }
    Ok(lo)
}

/// Site, pair and edge statistics of `Upsilon(rho)` after `steps` steps (default 500).
///
/// Passes when each mean is within `z` (default 3) standard errors of `rho`, `rho^2`, `phi(rho)`.
pub(super) fn stationarity(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let rho = constant_density(cfg)?;
    let steps = cfg.opt("steps", 500.0) as usize;
    let z = cfg.tol("z", 3.0);
    for &w in &cfg.sizes {
        let lo = bulk_start(cfg, w, steps)?;
        let hi = w as i64;
        let per_replica: Vec<[f64; 3]> = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| -> Result<[f64; 3]> {
                let rng = cfg.replica_rng(r);
                let mut p = initial_sites(cfg, &rng, 0, hi, w, 0);
                let mut prev = Vec::new();
                for t in 1..=steps as i64 {
                    prev = std::mem::replace(&mut p, Vec::new());
                    p = step_positions(&prev, &rng.at(t), 1)?;
                }
                let occ = ParticleConfiguration::line(p.clone())?.occupancy(lo, hi - 1);
                let bonds = (hi - 1 - lo) as f64;
                let density = occ.iter().filter(|&&b| b).count() as f64 / occ.len() as f64;
                let pairs = occ.windows(2).filter(|w| w[0] && w[1]).count() as f64 / bonds;
                // Bond x -> x+1 carries an arrow when a move a -> b has a <= x < b.
                let mut diff = vec![0i64; (hi - lo + 1) as usize];
                for (&a, &b) in prev.iter().zip(&p) {
                    let (a, b) = (a.max(lo), b.min(hi - 1));
                    if a < b {
                        diff[(a - lo) as usize] += 1;
                        diff[(b - lo) as usize] -= 1;
                    }
                }
                let mut run = 0;
                let mut edges = 0;
                for d in &diff[..(hi - 1 - lo) as usize] {
                    run += d;
                    edges += run;
                }
                Ok([density, pairs, edges as f64 / bonds])
            })
            .collect::<Result<_>>()?;
        let targets = [("site_density", rho), ("pair_product", rho * rho), ("edge_density", cfg.params.phi(rho))];
        for (i, (name, target)) in targets.into_iter().enumerate() {
            let xs: Vec<f64> = per_replica.iter().map(|v| v[i]).collect();
            let (m, s) = mean_sigma(&xs);
            rec.push(w, name, m, target, s, (m - target).abs() <= z * s);
        }
    }
    Ok(())
}

/// Current identity on line and ring trajectories, and the bulk current rate.
///
/// Runs `steps` steps (default 200). The identity must hold on every
/// trajectory; the rate passes within `z` (default 3) standard errors of `phi(rho)`.
pub(super) fn current(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let rho = constant_density(cfg)?;
    let steps = cfg.opt("steps", 200.0) as usize;
    let z = cfg.tol("z", 3.0);
    for &w in &cfg.sizes {
        let lo = bulk_start(cfg, w, steps)?;
        let hi = w as i64 - 1;
        let per_replica: Vec<(u64, u64, f64)> = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| -> Result<(u64, u64, f64)> {
                let rng = cfg.replica_rng(r);
                let sites = initial_sites(cfg, &rng, 0, w as i64, w, 0);
                let line = run_line(&ParticleConfiguration::line(sites.clone())?, &cfg.params, &rng, 0, steps, None)?;
                let (d, h) = current_identity(&line)?;
                let e = &line.ensemble;
                let mut edges = 0u64;
                for y in 1..=steps as i64 {
                    for x in lo..hi {
                        if x >= e.x0 - 1 && x < e.x0 + e.width as i64 {
                            edges += e.horizontal(x, y) as u64;
                        }
                    }
                }
                let ring = run_ring(&ParticleConfiguration::ring(w as i64, sites)?, &cfg.params, &rng, 0, steps)?;
                let (dr, hr) = current_identity(&ring)?;
                Ok((u64::from(d != h), u64::from(dr != hr), edges as f64 / ((hi - lo) as f64 * steps as f64)))
            })
            .collect::<Result<_>>()?;
        let bad_line: u64 = per_replica.iter().map(|v| v.0).sum();
        let bad_ring: u64 = per_replica.iter().map(|v| v.1).sum();
        rec.push(w, "identity_mismatches_line", bad_line as f64, 0.0, 0.0, bad_line == 0);
        rec.push(w, "identity_mismatches_ring", bad_ring as f64, 0.0, 0.0, bad_ring == 0);
        let rates: Vec<f64> = per_replica.iter().map(|v| v.2).collect();
        let (m, s) = mean_sigma(&rates);
        let target = cfg.params.phi(rho);
        rec.push(w, "current_rate", m, target, s, (m - target).abs() <= z * s);
    }
    Ok(())
}
