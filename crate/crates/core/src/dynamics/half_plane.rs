//! Infinite-volume evolution observed through a finite window.
//!
//! Going backwards from the final time, each step's dependence interval is
//! cut at one-step separating integers on both sides. Particles outside the
//! cut cannot influence the window, so evolving only the particles inside
//! reproduces the infinite system exactly on the window.

use crate::error::{Error, Result};
use crate::model::{KeyedStep, Randomness, VertexEnsemble};

use super::line::step_positions;
use super::separating::{separating_at_or_above, separating_at_or_below, tail_depth};

#[derive(Debug, Clone)]
pub struct HalfPlaneRun {
    pub lo: i64,
    pub hi: i64,
    pub steps: i64,
    /// Columns `lo..=hi`, rows `1..=steps`; vertical row 0 is the initial data.
    pub ensemble: VertexEnsemble,
    /// Left-tail depth used for the separating scans.
    pub depth: i64,
    /// Dependence interval at time 0.
    pub initial_span: (i64, i64),
}

impl HalfPlaneRun {
    pub fn occupancy(&self, t: i64) -> Vec<bool> {
        (self.lo..=self.hi).map(|x| self.ensemble.vertical(x, t) == 1).collect()
    }
}

/// Evolve the half-plane model with initial occupancy `init` for `steps` rows
/// and return the ensemble restricted to columns `lo..=hi`.
///
/// `cap` bounds how far a single separating scan may look before giving up.
pub fn evolve_half_plane_infinite(
    init: &(dyn Fn(i64) -> bool + Sync),
    rng: &Randomness,
    steps: i64,
    lo: i64,
    hi: i64,
    cap: i64,
) -> Result<HalfPlaneRun> {
    if hi < lo || steps < 0 {
        return Err(Error::RangeViolation(format!("window [{lo}, {hi}] with {steps} steps")));
    }
    let depth = tail_depth(rng.b2);
    let n = steps as usize;
    let mut span = vec![(lo, hi); n + 1];
    for t in (1..=n).rev() {
        let (a, b) = span[t];
        let left = separating_at_or_below(rng, t as i64, a - 2, depth, cap)?;
        let right = separating_at_or_above(rng, t as i64, b, depth, cap)?;
        span[t - 1] = (left + 1, right);
    }

    let width = (hi - lo + 1) as usize;
    let mut ensemble = VertexEnsemble::empty(lo, 1, width, n, false);
    let (a0, b0) = span[0];
    let mut pos: Vec<i64> = (a0..=b0).filter(|&x| init(x)).collect();
    for &x in pos.iter().filter(|&&x| x >= lo && x <= hi) {
        ensemble.set_vertical(x, 0, 1);
    }
    for t in 1..=n {
        let next = step_positions(&pos, &KeyedStep { rng, t: t as i64 }, 1)?;
        for (&from, &to) in pos.iter().zip(&next) {
            for x in from.max(lo - 1)..to.min(hi + 1) {
                ensemble.set_horizontal(x, t as i64, 1);
            }
        }
        let (a, b) = span[t];
        pos = next.into_iter().filter(|&x| x >= a && x <= b).collect();
        for &x in pos.iter().filter(|&&x| x >= lo && x <= hi) {
            ensemble.set_vertical(x, t as i64, 1);
        }
    }
    Ok(HalfPlaneRun { lo, hi, steps, ensemble, depth, initial_span: span[0] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::run_line;
    use crate::model::{validate_ensemble, ModelParams, ParticleConfiguration, Stream};

    #[test]
    fn empty_stays_empty() {
        let r = Randomness::new(2, &ModelParams::default());
        let run = evolve_half_plane_infinite(&|_| false, &r, 30, -5, 5, 100_000).unwrap();
        assert!((0..=30).all(|t| run.occupancy(t).iter().all(|&b| !b)));
    }

    #[test]
    fn finite_support_matches_direct_run() {
        let p = ModelParams::default();
        let r = Randomness::new(31, &p);
        let support = [-4i64, -3, 0, 2, 3, 7];
        let init = |x: i64| support.contains(&x);
        let run = evolve_half_plane_infinite(&init, &r, 25, 0, 40, 100_000).unwrap();
        let direct = run_line(&ParticleConfiguration::line(support.to_vec()).unwrap(), &p, &r, 0, 25, Some((0, 40)))
            .unwrap();
        assert_eq!(run.ensemble, direct.ensemble);
    }

    #[test]
    fn bernoulli_window_valid() {
        let p = ModelParams::default();
        let r = Randomness::new(5, &p);
        let init = |x: i64| r.bernoulli(Stream::Init, 0, x, 0, 0.4);
        let run = evolve_half_plane_infinite(&init, &r, 50, 0, 200, 100_000).unwrap();
        assert!(validate_ensemble(&run.ensemble));
        assert!(run.initial_span.0 < 0 && run.initial_span.1 > 200);
    }
}
