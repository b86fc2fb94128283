//! Coupling audits (E5) and the cylinder against the line under matched row uniforms (E8).

use rayon::prelude::*;

use super::{constant_density, ExperimentConfig, Recorder};
use crate::dynamics::{monotone_step, step_line_transfer, step_ring};
use crate::error::Result;
use crate::multiclass::{higher_rank_step, CoupledSystem, StepAudit};
use crate::{ParticleConfiguration, Randomness, Stream};

fn thin(rng: &Randomness, p: &[i64], keep: f64, class: usize) -> Vec<i64> {
    p.iter().copied().filter(|&x| rng.bernoulli(Stream::Init, 1, x, class, keep)).collect()
}

fn is_subset(a: &[i64], b: &[i64]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[derive(Default, Clone, Copy)]
struct Episode {
    coupled: StepAudit,
    attractivity: u64,
    growth: u64,
    monotone_steps: u64,
    monotone_violations: u64,
}

/// Nested data on `[0, W)`: a pair `eta <= xi`, a three-model `xi` chain,
/// and a monotone pair `p >= q`, each run `steps` steps (default 200).
fn episode(cfg: &ExperimentConfig, w: usize, steps: usize, r: usize) -> Result<Episode> {
    let rng = cfg.replica_rng(r);
    let base: Vec<i64> = (0..w as i64).filter(|&x| rng.bernoulli(Stream::Init, 0, x, 0, 0.6)).collect();
    let mut out = Episode::default();

    let xi = thin(&rng, &base, 0.85, 1);
    let mut pair = CoupledSystem::pair(thin(&rng, &xi, 0.7, 2), xi)?;
    let mid = thin(&rng, &base, 0.7, 3);
    let mut chain = CoupledSystem::new(Vec::new(), vec![thin(&rng, &mid, 0.6, 4), mid, base.clone()])?;
    for t in 1..=steps as i64 {
        let before = pair.discrepancies();
        let (next, audit) = higher_rank_step(&pair, &rng, t)?;
        out.coupled += audit;
        out.attractivity += u64::from(!is_subset(&next.etas[0], &next.xis[0]));
        out.growth += u64::from(next.discrepancies() > before);
        pair = next;
        let (next, audit) = higher_rank_step(&chain, &rng.reseed(rng.seed ^ 1), t)?;
        out.coupled += audit;
        chain = next;
    }

    // p is q with some particles pushed one site right.
    let q = thin(&rng, &base, 0.8, 5);
    let mut p = q.clone();
    for k in (0..p.len()).rev() {
        let room = p.get(k + 1).is_none_or(|&nx| p[k] + 1 < nx);
        if room && rng.bernoulli(Stream::Init, 2, p[k], 0, 0.3) {
            p[k] += 1;
        }
    }
    let mut q = q;
    let mono = rng.reseed(rng.seed ^ 2);
    for t in 1..=steps as i64 {
        match monotone_step(&p, &q, &mono, t) {
            Ok((np, nq)) => {
                let ordered = np.iter().zip(&nq).all(|(a, b)| a >= b)
                    && np.windows(2).all(|w| w[0] < w[1])
                    && nq.windows(2).all(|w| w[0] < w[1]);
                out.monotone_steps += (np.len() + nq.len()) as u64;
                if !ordered {
                    out.monotone_violations += 1;
                    break;
                }
                p = np;
                q = nq;
            }
            Err(_) => {
                out.monotone_violations += 1;
                break;
            }
        }
    }
    Ok(out)
}

/// Passes when every violation count is zero and each of the coupled and
/// monotone audits covers at least `min_particle_steps` (default 1e7).
pub(super) fn invariants(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let steps = cfg.opt("steps", 200.0) as usize;
    let need = cfg.opt("min_particle_steps", 1e7);
    for &w in &cfg.sizes {
        let eps: Vec<Episode> = (0..cfg.replicas).into_par_iter().map(|r| episode(cfg, w, steps, r)).collect::<Result<_>>()?;
        let mut tot = Episode::default();
        for e in &eps {
            tot.coupled += e.coupled;
            tot.attractivity += e.attractivity;
            tot.growth += e.growth;
            tot.monotone_steps += e.monotone_steps;
            tot.monotone_violations += e.monotone_violations;
        }
        let zero = |rec: &mut Recorder, name: &str, v: u64| rec.push(w, name, v as f64, 0.0, 0.0, v == 0);
        zero(rec, "attractivity_violations", tot.attractivity);
        zero(rec, "class_increases", tot.coupled.class_increases);
        zero(rec, "decouplings", tot.coupled.decouplings);
        zero(rec, "chain_order_violations", tot.coupled.order_violations);
        zero(rec, "discrepancy_growth", tot.growth);
        zero(rec, "monotone_order_violations", tot.monotone_violations);
        let cs = tot.coupled.particle_steps as f64;
        rec.push(w, "coupled_particle_steps", cs, need, 0.0, cs >= need);
        let ms = tot.monotone_steps as f64;
        rec.push(w, "monotone_particle_steps", ms, need, 0.0, ms >= need);
    }
    Ok(())
}

/// Ring of `N` sites against the line, agreeing initially on `[0, A]`.
///
/// Both use the same row uniforms, keyed on the line by site modulo `N`.
/// The window is `[m, A - m]` with `m = margin_factor * L` (default 1.25) and
/// `A = 2m + window_factor * L` (default 4); `N = A + 4L / (1 - b2) + 1`.
/// A replica counts when the occupations differ inside the window at some
/// time up to `L`. Passes when the frequency strictly decreases along the size list.
pub(super) fn cylinder_vs_line(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    constant_density(cfg)?;
    let mf = cfg.opt("margin_factor", 1.25);
    let wf = cfg.opt("window_factor", 4.0);
    let mut freqs = Vec::new();
    for &l in &cfg.sizes {
        let m = (mf * l as f64).ceil() as i64;
        let a = 2 * m + (wf * l as f64).ceil() as i64;
        let n = a + (4.0 * l as f64 / (1.0 - cfg.params.b2)).ceil() as i64 + 1;
        let hits: Vec<bool> = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| -> Result<bool> {
                let rng = cfg.replica_rng(r);
                let occ = |x: i64, class| cfg.profile.occupied(&rng, x, n as usize, class);
                let ring_sites: Vec<i64> = (0..n).filter(|&x| if x <= a { occ(x, 0) } else { occ(x, 2) }).collect();
                let mut line: Vec<i64> = (-n..=a + n).filter(|&x| if (0..=a).contains(&x) { occ(x, 0) } else { occ(x, 1) }).collect();
                let mut ring = ParticleConfiguration::ring(n, ring_sites)?;
                for t in 1..=l as i64 {
                    ring = step_ring(&ring, &rng, t)?.next;
                    line = step_line_transfer(&line, &rng, t, Some(n)).0;
                    let lo = line.partition_point(|&x| x < m);
                    let hi = line.partition_point(|&x| x <= a - m);
                    let rlo = ring.positions().partition_point(|&x| x < m);
                    let rhi = ring.positions().partition_point(|&x| x <= a - m);
                    if line[lo..hi] != ring.positions()[rlo..rhi] {
                        return Ok(true);
                    }
                }
                Ok(false)
            })
            .collect::<Result<_>>()?;
        let f = hits.iter().filter(|&&h| h).count() as f64 / cfg.replicas as f64;
        freqs.push(f);
        rec.push(l, "window_discrepancy_frequency", f, 0.0, (f * (1.0 - f) / cfg.replicas as f64).sqrt(), true);
    }
    let strictly = freqs.windows(2).all(|w| w[1] < w[0]);
    rec.flag(*cfg.sizes.last().expect("validated"), "frequency_strictly_decreasing", strictly);
    Ok(())
}
