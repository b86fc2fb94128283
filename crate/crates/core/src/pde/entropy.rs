use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use super::flux::FluxModel;
use super::profile::Domain;
use super::riemann::RiemannField;
use super::solver::SolutionField;

/// `g(s) = cos^2(pi s / 2)` on `|s| < 1`, zero outside.
fn g(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        let c = (0.5 * PI * s).cos();
        c * c
    }
}

fn g_prime(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        -0.5 * PI * (PI * s).sin()
    }
}

/// Tensor bump `g((x - xc)/hx) g((t - tc)/ht)`, restricted to `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub xc: f64,
    pub hx: f64,
    pub tc: f64,
    pub ht: f64,
}

impl Bump {
    pub fn f(&self, x: f64, t: f64) -> f64 {
        g((x - self.xc) / self.hx) * g((t - self.tc) / self.ht)
    }

    pub fn fx(&self, x: f64, t: f64) -> f64 {
        g_prime((x - self.xc) / self.hx) / self.hx * g((t - self.tc) / self.ht)
    }

    pub fn ft(&self, x: f64, t: f64) -> f64 {
        g((x - self.xc) / self.hx) * g_prime((t - self.tc) / self.ht) / self.ht
    }
}

/// Nonnegative test functions and Kruzhkov constants.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFamily {
    pub bumps: Vec<Bump>,
    pub cs: Vec<f64>,
}

impl TestFamily {
    /// Dyadic bumps inside `[a, b] x [0, t_end)` and 21 constants on `[0, 1]`.
    ///
    /// Spatial half-widths are `(b-a)/4, (b-a)/8, ...` over `levels` levels with
    /// centres spaced one half-width apart; temporal half-widths are `t_end/2`
    /// and `t_end/4`, starting at `t = 0` so the initial term is exercised.
    pub fn dyadic(a: f64, b: f64, t_end: f64, levels: u32) -> Self {
        let mut bumps = Vec::new();
        for l in 1..=levels {
            let hx = (b - a) / f64::from(1u32 << (l + 1));
            let nx = (1u32 << (l + 1)) - 1;
            for j in 1..=nx {
                let xc = a + f64::from(j) * hx;
                for k in [2u32, 4] {
                    let ht = t_end / f64::from(k);
                    for i in 0..k {
                        bumps.push(Bump { xc, hx, tc: f64::from(i) * ht, ht });
                    }
                }
            }
        }
        TestFamily { bumps, cs: (0..=20).map(|i| i as f64 / 20.0).collect() }
    }
}

/// Smallest Kruzhkov residual of a grid solution over the family.
///
/// Uses the summation-by-parts form matching the upwind update, so the
/// value is nonnegative up to rounding whenever the rows come from the
/// scheme; on other grid data it is a first-order quadrature of the residual.
pub fn entropy_residual(field: &SolutionField, family: &TestFamily, flux: &FluxModel) -> f64 {
    let m = field.rows[0].len();
    let n_steps = field.steps();
    let (dx, dt) = (field.dx, field.dt);
    let periodic = field.domain == Domain::Torus;
    let phi_rows: Vec<Vec<f64>> = field.rows.iter().map(|r| r.iter().map(|&u| flux.phi(u)).collect()).collect();
    let xc = |i: i64| field.x0 + (i as f64 + 0.5) * dx;
    let cell = |i: i64| -> Option<usize> {
        if periodic {
            Some(i.rem_euclid(m as i64) as usize)
        } else {
            (0..m as i64).contains(&i).then_some(i as usize)
        }
    };
    let mut worst = f64::INFINITY;
    for bump in &family.bumps {
        let i_lo = ((bump.xc - bump.hx - field.x0) / dx).floor() as i64 - 2;
        let i_hi = ((bump.xc + bump.hx - field.x0) / dx).ceil() as i64 + 2;
        let n_hi = if dt > 0.0 { (((bump.tc + bump.ht) / dt).ceil() as usize + 1).min(n_steps) } else { 0 };
        let f = |i: i64, n: usize| bump.f(xc(i), n as f64 * dt);
        for &c in &family.cs {
            let pc = flux.phi(c);
            let tail = |i: i64| if i < 0 { field.left } else { field.right };
            let e = |n: usize, i: i64| cell(i).map_or((tail(i) - c).abs(), |k| (field.rows[n][k] - c).abs());
            let q = |n: usize, i: i64| cell(i).map_or((flux.phi(tail(i)) - pc).abs(), |k| (phi_rows[n][k] - pc).abs());
            let mut r = 0.0;
            for i in i_lo..=i_hi {
                if n_steps >= 1 {
                    r += dx * f(i, 1) * e(0, i);
                }
                for n in 1..n_hi.min(n_steps) {
                    r += dx * (f(i, n + 1) - f(i, n)) * e(n, i);
                }
                for n in 0..n_hi.min(n_steps) {
                    r += dt * (f(i + 1, n + 1) - f(i, n + 1)) * q(n, i);
                }
                if n_hi == n_steps {
                    r -= dx * f(i, n_steps) * e(n_steps, i);
                }
            }
            worst = worst.min(r);
        }
    }
    worst
}

/// Smallest Kruzhkov residual of a closed-form Riemann solution, by
/// Gauss-Legendre quadrature on pieces where the integrand is smooth.
pub fn entropy_residual_exact(sol: &RiemannField, family: &TestFamily) -> f64 {
    let gl = GaussLegendre::new(NonZeroUsize::new(12).unwrap());
    let flux = sol.flux;
    let mut worst = f64::INFINITY;
    for bump in &family.bumps {
        let (xa, xb) = (bump.xc - bump.hx, bump.xc + bump.hx);
        let (ta, tb) = ((bump.tc - bump.ht).max(0.0), bump.tc + bump.ht);
        for &c in &family.cs {
            let mut speeds = sol.singular_speeds();
            speeds.extend(sol.level_speed(c));
            // Rays that meet the bump, and the times they cross its sides.
            let hits = |s: f64| {
                let x_at = |t: f64| sol.x0 + s * t;
                !(x_at(ta).max(x_at(tb)) <= xa || x_at(ta).min(x_at(tb)) >= xb)
            };
            speeds.retain(|&s| hits(s));
            let mut ts = vec![ta, tb];
            for &s in &speeds {
                for edge in [xa, xb] {
                    if s != 0.0 {
                        let t = (edge - sol.x0) / s;
                        if t > ta && t < tb {
                            ts.push(t);
                        }
                    }
                }
            }
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            let pc = flux.phi(c);
            let inner = |t: f64| {
                let mut xs = vec![xa, xb];
                xs.extend(speeds.iter().map(|&s| sol.x0 + s * t).filter(|&x| x > xa && x < xb));
                xs.sort_by(f64::total_cmp);
                xs.windows(2)
                    .map(|w| {
                        gl.integrate(w[0], w[1], |x| {
                            let u = sol.value(x, t);
                            (u - c).abs() * bump.ft(x, t) + (flux.phi(u) - pc).abs() * bump.fx(x, t)
                        })
                    })
                    .sum::<f64>()
            };
            let mut r: f64 = ts.windows(2).map(|w| gl.integrate(w[0], w[1], inner)).sum();
            if ta == 0.0 {
                let mut xs = vec![xa, xb];
                if sol.x0 > xa && sol.x0 < xb {
                    xs.push(sol.x0);
                }
                xs.sort_by(f64::total_cmp);
                r += xs
                    .windows(2)
                    .map(|w| gl.integrate(w[0], w[1], |x| (sol.value(x, 0.0) - c).abs() * bump.f(x, 0.0)))
                    .sum::<f64>();
            }
            worst = worst.min(r);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::{DensityProfile, Solver};

    fn flux() -> FluxModel {
        FluxModel::new(1.5)
    }

    #[test]
    fn bump_derivatives() {
        let b = Bump { xc: 0.3, hx: 0.2, tc: 0.5, ht: 0.25 };
        let h = 1e-6;
        for (x, t) in [(0.35, 0.6), (0.2, 0.4), (0.45, 0.7)] {
            let fx = (b.f(x + h, t) - b.f(x - h, t)) / (2.0 * h);
            let ft = (b.f(x, t + h) - b.f(x, t - h)) / (2.0 * h);
            assert!((fx - b.fx(x, t)).abs() < 1e-6);
            assert!((ft - b.ft(x, t)).abs() < 1e-6);
        }
    }

    #[test]
    fn constant_solution() {
        let fam = TestFamily::dyadic(-1.0, 1.0, 1.0, 2);
        let sol = RiemannField::entropy(0.4, 0.4, 0.0, flux()).unwrap();
        assert!(entropy_residual_exact(&sol, &fam) >= -1e-10);
    }

    #[test]
    fn closed_forms() {
        let fam = TestFamily::dyadic(-0.5, 2.0, 1.0, 3);
        for (th, rh) in [(0.2, 0.8), (0.8, 0.2)] {
            let sol = RiemannField::entropy(th, rh, 0.0, flux()).unwrap();
            assert!(entropy_residual_exact(&sol, &fam) >= -1e-9, "{th} {rh}");
        }
        let bad = RiemannField::jump(0.8, 0.2, 0.0, flux()).unwrap();
        assert!(entropy_residual_exact(&bad, &fam) < -1e-3);
    }

    #[test]
    fn solver_output_on_torus() {
        let m = 200;
        let cells: Vec<f64> = (0..m)
            .map(|i| 0.5 + 0.3 * (2.0 * PI * (i as f64 + 0.5) / m as f64).sin())
            .collect();
        let u = DensityProfile::from_torus_cells(&cells).unwrap();
        let field = Solver::new(flux(), 1.0 / m as f64).evolve_field(&u, 0.6).unwrap();
        let fam = TestFamily::dyadic(0.0, 1.0, 0.6, 3);
        assert!(entropy_residual(&field, &fam, &flux()) >= -1e-12);
    }

    #[test]
    fn grid_negative_control() {
        // Sample the non-entropy jump on a grid and evaluate the same sums.
        let bad = RiemannField::jump(0.8, 0.2, 0.0, flux()).unwrap();
        let (dx, dt) = (1.0 / 400.0, 1.0 / 800.0);
        let x0 = -0.5;
        let m = 1000;
        let rows: Vec<Vec<f64>> = (0..=800)
            .map(|n| (0..m).map(|i| bad.value(x0 + (i as f64 + 0.5) * dx, n as f64 * dt)).collect())
            .collect();
        let field = SolutionField { domain: Domain::Line, x0, dx, dt, rows, left: 0.8, right: 0.2 };
        let fam = TestFamily::dyadic(-0.5, 2.0, 1.0, 3);
        assert!(entropy_residual(&field, &fam, &flux()) < -1e-3);
    }
}
