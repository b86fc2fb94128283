//! One-step displacement tails (E6).

use super::{constant_density, ExperimentConfig, Recorder};
use crate::dynamics::step_ring;
use crate::error::Result;
use crate::multiclass::{step_multiclass, tagged_speed_tail, MultiClassConfiguration, TailPoint};
use crate::{ParticleConfiguration, Stream};

const VMAX: u64 = 12;

fn report(rec: &mut Recorder, n: usize, topology: &str, tail: &[TailPoint], z: f64) {
    for p in tail {
        rec.push(n, &format!("{topology}_tail_v{}", p.v), p.empirical, p.bound, p.sigma, !p.violates(z));
    }
}

/// Two-class line on `[0, N)` and single-class ring of `N` sites, run until
/// `samples` (default 1e5) displacements are collected on each. Class 2
/// takes half of the occupied sites. Passes when `P[d >= v] <= b2^(v-1) + z sigma`
/// (default `z = 4`) for every `v <= 12`.
pub(super) fn speed_tail(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let rho = constant_density(cfg)?;
    let want = cfg.opt("samples", 1e5) as usize;
    let z = cfg.tol("z", 4.0);
    for &n in &cfg.sizes {
        let mut line = Vec::with_capacity(want);
        let mut ring = Vec::with_capacity(want);
        let mut r = 0;
        while line.len() < want || ring.len() < want {
            let rng = cfg.replica_rng(r);
            r += 1;
            let labels: Vec<u8> = (0..n as i64)
                .map(|x| match (rng.bernoulli(Stream::Init, 0, x, 0, rho), rng.bernoulli(Stream::Init, 0, x, 1, 0.5)) {
                    (false, _) => 0,
                    (true, false) => 1,
                    (true, true) => 2,
                })
                .collect();
            let mut mc = MultiClassConfiguration::from_labels(0, &labels, 2)?;
            let sites: Vec<i64> = (0..n as i64).filter(|&x| labels[x as usize] > 0).collect();
            let mut rc = ParticleConfiguration::ring(n as i64, sites)?;
            let steps = cfg.opt("steps", 200.0) as i64;
            for t in 1..=steps {
                if line.len() < want {
                    let next = step_multiclass(&mc, &rng.at(t))?;
                    for (a, b) in mc.classes().iter().zip(next.classes()) {
                        line.extend(a.iter().zip(b).map(|(x, y)| (y - x) as u64));
                    }
                    mc = next;
                }
                if ring.len() < want {
                    let s = step_ring(&rc, &rng, t)?;
                    ring.extend_from_slice(&s.displacement);
                    rc = s.next;
                }
            }
        }
        report(rec, n, "line", &tagged_speed_tail(&line, cfg.params.b2, VMAX)?, z);
        report(rec, n, "ring", &tagged_speed_tail(&ring, cfg.params.b2, VMAX)?, z);
    }
    Ok(())
}
