//! Double-sided Bernoulli data on the line.
//!
//! One trajectory per replica is observed at every time `t` in the size
//! list, so the sizes share their randomness. The left part of the slab
//! extends `(kappa + 0.6) t` sites, enough that its empty exterior never
//! reaches `x = -t / 2`.

use rayon::prelude::*;

use super::{initial_sites, non_increasing, ExperimentConfig, InitialProfile, Recorder};
use crate::dynamics::step_positions;
use crate::error::Result;
use crate::pde::{riemann_solution, shock_speed, FluxModel};
use crate::stats::mean_sigma;

const PROFILE_BIN: f64 = 0.05;

/// Positions at each requested time, per replica.
fn snapshots(cfg: &ExperimentConfig, right: f64) -> Result<Vec<Vec<Vec<i64>>>> {
    let nmax = *cfg.sizes.last().expect("validated") as f64;
    let left = ((cfg.params.kappa() + 0.6) * nmax).ceil() as i64;
    let right = (right * nmax).ceil() as i64;
    (0..cfg.replicas)
        .into_par_iter()
        .map(|r| {
            let rng = cfg.replica_rng(r);
            let mut p = initial_sites(cfg, &rng, -left, right, 1, 0);
            let mut out = Vec::with_capacity(cfg.sizes.len());
            let mut t = 0;
            for &n in &cfg.sizes {
                while t < n {
                    t += 1;
                    p = step_positions(&p, &rng.at(t as i64), 1)?;
                }
                out.push(p.clone());
            }
            Ok(out)
        })
        .collect()
}

fn count(p: &[i64], lo: i64, hi: i64) -> usize {
    p.partition_point(|&x| x < hi) - p.partition_point(|&x| x < lo)
}

/// Replica-averaged density on bins `[xi, xi + bin)` of `xi` in `[a, b)`, scaled by `t`.
fn binned(snaps: &[Vec<Vec<i64>>], i: usize, t: usize, a: f64, b: f64, bin: f64) -> Vec<(f64, f64)> {
    let nb = ((b - a) / bin).round() as usize;
    (0..nb)
        .map(|k| {
            let xa = a + k as f64 * bin;
            let (lo, hi) = ((xa * t as f64).round() as i64, ((xa + bin) * t as f64).round() as i64);
            let tot: usize = snaps.iter().map(|s| count(&s[i], lo, hi)).sum();
            (xa + 0.5 * bin, tot as f64 / (snaps.len() as f64 * (hi - lo) as f64))
        })
        .collect()
}

fn exact_bin(theta: f64, rho: f64, flux: &FluxModel, center: f64, bin: f64) -> f64 {
    let m = 64;
    (0..m)
        .map(|j| riemann_solution(theta, rho, center - 0.5 * bin + (j as f64 + 0.5) * bin / m as f64, flux).unwrap_or(f64::NAN))
        .sum::<f64>()
        / m as f64
}

/// Largest bin deviation from the Riemann solution over `xi` in `[-0.5, 1.5)`,
/// skipping bins within `0.1` of a shock.
fn sup_window(snaps: &[Vec<Vec<i64>>], i: usize, t: usize, theta: f64, rho: f64, flux: &FluxModel, shock: Option<f64>) -> f64 {
    binned(snaps, i, t, -0.5, 1.5, PROFILE_BIN)
        .into_iter()
        .filter(|(c, _)| shock.is_none_or(|s| (c - s).abs() > 0.1 + 0.5 * PROFILE_BIN))
        .map(|(c, v)| (v - exact_bin(theta, rho, flux, c, PROFILE_BIN)).abs())
        .fold(0.0, f64::max)
}

pub(super) fn run(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let InitialProfile::DoubleSided { theta, rho } = cfg.profile else { unreachable!("validated") };
    if theta < rho {
        shock(cfg, rec, theta, rho)
    } else {
        fan(cfg, rec, theta, rho)
    }
}

/// Shock location by mass balance on `[0, 1.5 t)`.
///
/// Sites left of the origin evolve on their own, so the current into the
/// window is that of stationary `theta` data and
/// `E[count] = rho * B + (phi(theta) - phi(rho)) t`; solving
/// `count = theta * s + rho * (B - s)` for `s` gives an unbiased estimate of
/// the shock position. Passes when `s / (vartheta t)` is within
/// `shock_ratio` (default 0.05) of 1 and the error does not grow with `t`.
fn shock(cfg: &ExperimentConfig, rec: &mut Recorder, theta: f64, rho: f64) -> Result<()> {
    let flux = cfg.params.flux();
    let speed = shock_speed(theta, rho, &flux)?;
    let window = cfg.opt("window", 1.5);
    let snaps = snapshots(cfg, window)?;
    let tol = cfg.tol("shock_ratio", 0.05);
    let sup_tol = cfg.tol("sup_window", 0.1);
    let mut errors = Vec::new();
    for (i, &t) in cfg.sizes.iter().enumerate() {
        let b = (window * t as f64).ceil() as i64;
        let ratios: Vec<f64> = snaps
            .iter()
            .map(|s| {
                let c = count(&s[i], 0, b) as f64;
                (rho * b as f64 - c) / (rho - theta) / (speed * t as f64)
            })
            .collect();
        let (m, s) = mean_sigma(&ratios);
        errors.push((m - 1.0).abs());
        rec.push(t, "shock_ratio", m, 1.0, s, (m - 1.0).abs() <= tol);
        let dev = sup_window(&snaps, i, t, theta, rho, &flux, Some(speed));
        rec.push(t, "sup_window_deviation", dev, 0.0, 0.0, dev <= sup_tol);
    }
    let n = *cfg.sizes.last().expect("validated");
    rec.flag(n, "shock_error_nonincreasing", non_increasing(&errors));
    Ok(())
}

/// Least-squares fan edges: `theta` left of `a`, `rho` right of `b`, and the
/// fan shape rescaled to `[a, b]` in between.
fn fit_fan(profile: &[(f64, f64)], theta: f64, rho: f64, flux: &FluxModel) -> (f64, f64) {
    let (s0, s1) = (flux.phi_prime(theta), flux.phi_prime(rho));
    let model = |xi: f64, a: f64, b: f64| {
        if xi <= a {
            theta
        } else if xi >= b {
            rho
        } else {
            flux.phi_prime_inverse(s0 + (xi - a) / (b - a) * (s1 - s0))
        }
    };
    let sse = |a: f64, b: f64| profile.iter().map(|&(xi, v)| (v - model(xi, a, b)).powi(2)).sum::<f64>();
    let (lo, hi) = (profile[0].0, profile[profile.len() - 1].0);
    let search = |best: &mut (f64, f64, f64), a_range: (f64, f64), b_range: (f64, f64), h: f64| {
        let mut a = a_range.0;
        while a <= a_range.1 {
            let mut b = b_range.0.max(a + h);
            while b <= b_range.1 {
                let e = sse(a, b);
                if e < best.0 {
                    *best = (e, a, b);
                }
                b += h;
            }
            a += h;
        }
    };
    let mut best = (f64::INFINITY, lo, hi);
    search(&mut best, (lo, hi), (lo, hi), 0.005);
    let (a, b) = (best.1, best.2);
    search(&mut best, (a - 0.01, a + 0.01), (b - 0.01, b + 0.01), 0.0005);
    (best.1, best.2)
}

/// Rarefaction fan: density near `x = t` and fitted fan edges.
///
/// Passes when the density over a window of width `0.05 t` around `x = t` is
/// within `fan_density` (default 0.03) of the fan value there and each
/// fitted edge is within `fan_edge` (default 0.05) of `phi'(theta)`, `phi'(rho)`.
fn fan(cfg: &ExperimentConfig, rec: &mut Recorder, theta: f64, rho: f64) -> Result<()> {
    let flux = cfg.params.flux();
    let snaps = snapshots(cfg, 2.0)?;
    let dtol = cfg.tol("fan_density", 0.03);
    let etol = cfg.tol("fan_edge", 0.05);
    let sup_tol = cfg.tol("sup_window", 0.1);
    for (i, &t) in cfg.sizes.iter().enumerate() {
        let half = (0.025 * t as f64).round() as i64;
        let (lo, hi) = (t as i64 - half, t as i64 + half);
        let dens: Vec<f64> = snaps.iter().map(|s| count(&s[i], lo, hi) as f64 / (hi - lo) as f64).collect();
        let (m, s) = mean_sigma(&dens);
        let target = riemann_solution(theta, rho, 1.0, &flux)?;
        rec.push(t, "density_at_xi1", m, target, s, (m - target).abs() <= dtol);

        let profile = binned(&snaps, i, t, 0.2, 1.8, 0.01);
        let (a, b) = fit_fan(&profile, theta, rho, &flux);
        let (ta, tb) = (flux.phi_prime(theta), flux.phi_prime(rho));
        rec.push(t, "fan_left_edge", a, ta, f64::NAN, (a - ta).abs() <= etol);
        rec.push(t, "fan_right_edge", b, tb, f64::NAN, (b - tb).abs() <= etol);

        let dev = sup_window(&snaps, i, t, theta, rho, &flux, None);
        rec.push(t, "sup_window_deviation", dev, 0.0, 0.0, dev <= sup_tol);
    }
    Ok(())
}
