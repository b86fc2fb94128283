use serde::{Deserialize, Serialize};

use crate::dynamics::run_line;
use crate::error::{Error, Result};
use crate::model::{ModelParams, ParticleConfiguration, Randomness, Stream, VertexEnsemble};
use crate::stats::Histogram;

use super::quadrant::sample_quadrant;

/// How a Gibbs window is produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WindowMethod {
    /// Line dynamics from Bernoulli data on a slab of `width` sites, run for `steps` rows.
    HalfPlane { width: i64, steps: usize },
    /// Sub-window of a double-sided Bernoulli quadrant, `margin` vertices from both axes.
    Quadrant { margin: usize },
}

impl WindowMethod {
    /// Smallest slab meeting the halo rule for half-size `k`.
    pub fn half_plane(k: usize, b2: f64) -> Self {
        let steps = (8 * k).max(2 * k + 1);
        WindowMethod::HalfPlane { width: halo_width(k, steps, b2), steps }
    }
}

fn halo_width(k: usize, steps: usize, b2: f64) -> i64 {
    2 * k as i64 + 2 * steps as i64 * (2.0 / (1.0 - b2)).ceil() as i64
}

/// `W >= 2k + 2T ceil(2/(1-b2))` and `T >= 8k`.
pub fn halo_ok(k: usize, width: i64, steps: usize, b2: f64) -> bool {
    steps >= 8 * k && steps > 2 * k && width >= halo_width(k, steps, b2)
}

/// A window on `[-k, k]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GibbsWindowSample {
    pub rho: f64,
    pub window: VertexEnsemble,
    pub method: WindowMethod,
    /// Lattice distance from the window to the nearest boundary of the construction.
    pub boundary_distance: i64,
}

pub fn sample_mu_window(
    rho: f64,
    k: usize,
    params: &ModelParams,
    seed: u64,
    method: WindowMethod,
) -> Result<GibbsWindowSample> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::RangeViolation(format!("rho = {rho}")));
    }
    let side = 2 * k + 1;
    let ki = k as i64;
    let (mut window, boundary_distance) = match method {
        WindowMethod::HalfPlane { width, steps } => {
            if !halo_ok(k, width, steps, params.b2) {
                return Err(Error::WindowTooLarge(format!("k = {k} needs a wider or taller slab than {width} x {steps}")));
            }
            let rng = Randomness::new(seed, params);
            let half = width / 2;
            let init: Vec<i64> = (-half..=half).filter(|&x| rng.bernoulli(Stream::Init, 0, x, 0, rho)).collect();
            let run = run_line(&ParticleConfiguration::line(init)?, params, &rng, 0, steps, Some((-ki, ki)))?;
            let top = steps as i64;
            (run.ensemble.sub_window(-ki, top - 2 * ki, side, side), half - ki)
        }
        WindowMethod::Quadrant { margin } => {
            let q = sample_quadrant(rho, margin + side, params, seed);
            let m = margin as i64;
            (q.sub_window(m + 1, m + 1, side, side), m)
        }
    };
    window.x0 = -ki;
    window.y0 = -ki;
    Ok(GibbsWindowSample { rho, window, method, boundary_distance })
}

/// Empirical law of window states; all windows must have one shape.
pub fn window_histogram(samples: &[GibbsWindowSample]) -> Result<Histogram> {
    let Some(first) = samples.first() else {
        return Ok(Histogram::default());
    };
    let mut h = Histogram::new((first.window.width, first.window.height));
    for s in samples {
        h.add_window(&s.window)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_ensemble;
    use crate::stats::tv_distance;

    #[test]
    fn halo_rule() {
        let m = WindowMethod::half_plane(1, 0.5);
        assert_eq!(m, WindowMethod::HalfPlane { width: 66, steps: 8 });
        let p = ModelParams::default();
        let bad = WindowMethod::HalfPlane { width: 20, steps: 8 };
        assert!(matches!(sample_mu_window(0.4, 1, &p, 0, bad), Err(Error::WindowTooLarge(_))));
    }

    #[test]
    fn histogram_basics() {
        let p = ModelParams::default();
        let a = sample_mu_window(0.0, 0, &p, 0, WindowMethod::Quadrant { margin: 2 }).unwrap();
        let h = window_histogram(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(h.counts.len(), 1);
        let b = sample_mu_window(0.0, 1, &p, 0, WindowMethod::Quadrant { margin: 2 }).unwrap();
        assert_eq!(window_histogram(&[a, b]), Err(Error::MixedShapes));
    }

    /// Exact law of a 1x1 window: inputs are independent with means `rho` and `phi(rho)`.
    fn exact_vertex_law(rho: f64, p: &ModelParams) -> Histogram {
        let f = p.phi(rho);
        let mut h = Histogram::new((1, 1));
        let scale = 1_000_000_000u64;
        for i1 in 0..2u8 {
            for j1 in 0..2u8 {
                let pin = if i1 == 1 { rho } else { 1.0 - rho } * if j1 == 1 { f } else { 1.0 - f };
                let outs: Vec<(u8, u8, f64)> = match (i1, j1) {
                    (1, 0) => vec![(1, 0, p.b1), (0, 1, 1.0 - p.b1)],
                    (0, 1) => vec![(0, 1, p.b2), (1, 0, 1.0 - p.b2)],
                    (a, b) => vec![(a, b, 1.0)],
                };
                for (i2, j2, w) in outs {
                    let mut e = VertexEnsemble::empty(0, 0, 1, 1, false);
                    e.set_vertical(0, -1, i1);
                    e.set_horizontal(-1, 0, j1);
                    e.set_vertical(0, 0, i2);
                    e.set_horizontal(0, 0, j2);
                    let c = (pin * w * scale as f64).round() as u64;
                    *h.counts.entry(e.pack()).or_default() += c;
                    h.total += c;
                }
            }
        }
        h
    }

    #[test]
    fn both_methods_match_exact_vertex_law() {
        let p = ModelParams::default();
        let exact = exact_vertex_law(0.4, &p);
        for method in [WindowMethod::Quadrant { margin: 3 }, WindowMethod::half_plane(0, p.b2)] {
            let samples: Vec<_> = (0..20_000).map(|s| sample_mu_window(0.4, 0, &p, s, method).unwrap()).collect();
            assert!(samples.iter().all(|s| validate_ensemble(&s.window)));
            let h = window_histogram(&samples).unwrap();
            let tv = tv_distance(&h, &exact).unwrap();
            // Six states at 2e4 samples: sampling TV is about 0.005.
            assert!(tv < 0.015, "{method:?}: tv = {tv}");
        }
    }
}
