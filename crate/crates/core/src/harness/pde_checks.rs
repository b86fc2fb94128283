//! Finite-volume solver against closed forms.

use super::{ExperimentConfig, Recorder};
use crate::error::Result;
use crate::pde::{
    delta_distance, entropy_residual, entropy_residual_exact, l1_on, DensityProfile, RiemannField, Solver, TestFamily,
};
use crate::{Randomness, Stream};

const RIEMANN: [(&str, f64, f64); 2] = [("shock", 0.2, 0.8), ("fan", 0.8, 0.2)];

/// Piecewise-constant sample of the exact solution at time `t` on `[a, b]`, cells of width `h`.
fn exact_profile(sol: &RiemannField, t: f64, a: f64, b: f64, h: f64) -> Result<DensityProfile> {
    let m = ((b - a) / h).ceil() as usize;
    let cells: Vec<f64> = (0..m).map(|i| sol.value(a + (i as f64 + 0.5) * h, t)).collect();
    DensityProfile::from_cells(a, h, &cells, sol.theta, sol.rho)
}

/// `sizes` are inverse grid spacings.
///
/// * L1 error at `t` (option, default 0.5) on `[-0.5, 1.5]` for a shock and a
///   fan; the error ratio per refinement must reach `l1_ratio` (default 1.3).
/// * Entropy residuals of solver output and of the closed forms must be at
///   least `-entropy` (default 1e-6); the non-entropy jump must fall below
///   `-control` (default 1e-3).
/// * `Delta(P_t u, P_t v) <= Delta(u, v) + 2 dx` on `replicas` random pairs.
pub(super) fn run(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let flux = cfg.params.flux();
    let t = cfg.opt("t", 0.5);
    let (a, b) = (-0.5, 1.5);
    let ratio_tol = cfg.tol("l1_ratio", 1.3);
    for (name, theta, rho) in RIEMANN {
        let sol = RiemannField::entropy(theta, rho, 0.0, flux)?;
        let init = DensityProfile::step(theta, rho, 0.0)?;
        let mut errs = Vec::new();
        for &n in &cfg.sizes {
            let dx = 1.0 / n as f64;
            let num = Solver::new(flux, dx).evolve_p(&init, t)?;
            let err = l1_on(&num, &exact_profile(&sol, t, a - 1.0, b + 1.0, dx / 64.0)?, a, b);
            if let Some(&prev) = errs.last() {
                let ratio: f64 = prev / err;
                rec.push(n, &format!("l1_ratio_{name}"), ratio, ratio_tol, 0.0, ratio >= ratio_tol);
            }
            rec.push(n, &format!("l1_error_{name}"), err, 0.0, 0.0, true);
            errs.push(err);
        }
    }

    let ent = cfg.tol("entropy", 1e-6);
    let family = TestFamily::dyadic(a, b, 1.0, 3);
    let n_mid = cfg.sizes[cfg.sizes.len() / 2];
    for (name, theta, rho) in RIEMANN {
        let exact = entropy_residual_exact(&RiemannField::entropy(theta, rho, 0.0, flux)?, &family);
        rec.push(0, &format!("entropy_exact_{name}"), exact, -ent, 0.0, exact >= -ent);
        let field = Solver::new(flux, 1.0 / n_mid as f64).evolve_field(&DensityProfile::step(theta, rho, 0.0)?, 1.0)?;
        let grid = entropy_residual(&field, &family, &flux);
        rec.push(n_mid, &format!("entropy_grid_{name}"), grid, -ent, 0.0, grid >= -ent);
    }
    let control = entropy_residual_exact(&RiemannField::jump(0.8, 0.2, 0.0, flux)?, &family);
    let ctol = cfg.tol("control", 1e-3);
    rec.push(0, "entropy_negative_control", control, -ctol, 0.0, control < -ctol);

    // Random pairs with shared tails, pieces on [0, 1].
    let dx = 1.0 / cfg.sizes[0] as f64;
    let solver = Solver::new(flux, dx);
    let rng = Randomness::new(cfg.seed, &cfg.params);
    let u01 = |k: i64, j: i64| rng.uniform(Stream::Init, k, j, 3);
    let mut violations = 0u64;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..cfg.replicas as i64 {
        let (left, right) = (u01(k, 0), u01(k, 1));
        let make = |off: i64| -> Result<DensityProfile> {
            let pieces = 5;
            let bps: Vec<f64> = (1..pieces).map(|i| i as f64 / pieces as f64).collect();
            let mut vals = vec![left];
            vals.extend((0..pieces - 2).map(|i| u01(k, off + i)));
            vals.push(right);
            DensityProfile::line(bps, vals)
        };
        let (u, v) = (make(10)?, make(20)?);
        let before = delta_distance(&u, &v)?;
        let after = delta_distance(&solver.evolve_p(&u, 0.25)?, &solver.evolve_p(&v, 0.25)?)?;
        worst = worst.max(after - before);
        violations += u64::from(after > before + 2.0 * dx);
    }
    rec.push(cfg.sizes[0], "contraction_violations", violations as f64, 0.0, 0.0, violations == 0);
    rec.push(cfg.sizes[0], "contraction_worst_excess", worst, 2.0 * dx, 0.0, worst <= 2.0 * dx);
    Ok(())
}
