use crate::error::{Error, Result};

use super::flux::FluxModel;
use super::profile::{DensityProfile, Domain};

/// Time step is `CFL * dx / kappa`.
pub const CFL: f64 = 0.9;

/// Upwind finite volumes. Since `phi` is increasing, upwind is the Godunov flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solver {
    pub flux: FluxModel,
    pub dx: f64,
    pub max_dx: f64,
}

/// Cell averages at every time level.
///
/// Row `n` holds time `n * dt` on cells `[x0 + i dx, x0 + (i+1) dx)`. On the
/// line, `left` and `right` are the constant tails outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub domain: Domain,
    pub x0: f64,
    pub dx: f64,
    pub dt: f64,
    pub rows: Vec<Vec<f64>>,
    pub left: f64,
    pub right: f64,
}

impl SolutionField {
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn profile(&self, n: usize) -> DensityProfile {
        let row = &self.rows[n];
        match self.domain {
            Domain::Line => DensityProfile::from_cells(self.x0, self.dx, row, self.left, self.right),
            Domain::Torus => DensityProfile::from_torus_cells(row),
        }
        .expect("monotone scheme keeps values in range")
    }

    pub fn last(&self) -> DensityProfile {
        self.profile(self.steps())
    }

    /// Row nearest to time `t`.
    pub fn row_at(&self, t: f64) -> &[f64] {
        let n = ((t / self.dt).round() as usize).min(self.steps());
        &self.rows[n]
    }
}

impl Solver {
    pub fn new(flux: FluxModel, dx: f64) -> Self {
        Solver { flux, dx, max_dx: 1.0 / 16.0 }
    }

    fn check(&self) -> Result<()> {
        if !(self.dx > 0.0) || self.dx > self.max_dx {
            return Err(Error::ResolutionTooCoarse { dx: self.dx, max: self.max_dx });
        }
        Ok(())
    }

    fn steps_for(&self, t: f64) -> (usize, f64) {
        if t <= 0.0 {
            return (0, 0.0);
        }
        let n = (t / (CFL * self.dx / self.flux.kappa)).ceil() as usize;
        (n, t / n as f64)
    }

    /// Grid covering everything the data can influence by time `t`.
    fn line_grid(&self, u: &DensityProfile, t: f64) -> (f64, usize) {
        let bps = u.breakpoints();
        let (a, b) = match (bps.first(), bps.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0.0, 0.0),
        };
        let x0 = ((a / self.dx).floor() - 2.0) * self.dx;
        // Numerical signals travel at most one cell per step.
        let reach = b + t * self.flux.kappa / CFL + 3.0 * self.dx;
        (x0, ((reach - x0) / self.dx).ceil() as usize)
    }

    fn march(&self, mut u: Vec<f64>, n: usize, dt: f64, periodic: bool, left: f64, mut keep: Option<&mut Vec<Vec<f64>>>) -> Vec<f64> {
        let lam = dt / self.dx;
        let m = u.len();
        let mut f = vec![0.0; m];
        for _ in 0..n {
            for (fi, &ui) in f.iter_mut().zip(&u) {
                *fi = self.flux.phi(ui);
            }
            let f_in = if periodic { f[m - 1] } else { self.flux.phi(left) };
            let mut prev = f_in;
            for i in 0..m {
                let fi = f[i];
                u[i] -= lam * (fi - prev);
                prev = fi;
            }
            if let Some(rows) = keep.as_deref_mut() {
                rows.push(u.clone());
            }
        }
        u
    }

    fn initial(&self, u: &DensityProfile, t: f64) -> (f64, Vec<f64>) {
        match u.domain() {
            Domain::Line => {
                let (x0, m) = self.line_grid(u, t);
                (x0, u.cell_averages(x0, self.dx, m))
            }
            Domain::Torus => {
                let m = (1.0 / self.dx).round() as usize;
                (0.0, u.cell_averages(0.0, 1.0 / m as f64, m))
            }
        }
    }

    /// Entropy solution at time `t` recorded at every step.
    pub fn evolve_field(&self, u: &DensityProfile, t: f64) -> Result<SolutionField> {
        self.check()?;
        let (x0, cells) = self.initial(u, t);
        let (n, dt) = self.steps_for(t);
        let dx = match u.domain() {
            Domain::Line => self.dx,
            Domain::Torus => 1.0 / cells.len() as f64,
        };
        let solver = Solver { dx, ..*self };
        let mut rows = vec![cells.clone()];
        solver.march(cells, n, dt, u.domain() == Domain::Torus, u.left_tail(), Some(&mut rows));
        Ok(SolutionField { domain: u.domain(), x0, dx, dt, rows, left: u.left_tail(), right: u.right_tail() })
    }

    fn evolve(&self, u: &DensityProfile, t: f64) -> Result<DensityProfile> {
        self.check()?;
        if u.breakpoints().is_empty() {
            return Ok(u.clone());
        }
        let (x0, cells) = self.initial(u, t);
        let (n, dt) = self.steps_for(t);
        Ok(match u.domain() {
            Domain::Line => {
                let out = self.march(cells, n, dt, false, u.left_tail(), None);
                DensityProfile::from_cells(x0, self.dx, &out, u.left_tail(), u.right_tail())?
            }
            Domain::Torus => {
                let solver = Solver { dx: 1.0 / cells.len() as f64, ..*self };
                DensityProfile::from_torus_cells(&solver.march(cells, n, dt, true, 0.0, None))?
            }
        })
    }

    /// Line semigroup.
    pub fn evolve_p(&self, u: &DensityProfile, t: f64) -> Result<DensityProfile> {
        if u.domain() != Domain::Line {
            return Err(Error::DomainMismatch);
        }
        self.evolve(u, t)
    }

    /// Torus semigroup.
    pub fn evolve_q(&self, u: &DensityProfile, t: f64) -> Result<DensityProfile> {
        if u.domain() != Domain::Torus {
            return Err(Error::DomainMismatch);
        }
        self.evolve(u, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver(dx: f64) -> Solver {
        Solver::new(FluxModel::new(1.5), dx)
    }

    #[test]
    fn constants_are_fixed() {
        let c = DensityProfile::constant(Domain::Line, 0.3).unwrap();
        assert_eq!(solver(0.01).evolve_p(&c, 1.0).unwrap(), c);
        let tor = DensityProfile::from_torus_cells(&[0.3; 50]).unwrap();
        let out = solver(0.02).evolve_q(&tor, 1.0).unwrap();
        assert!(out.values().iter().all(|&v| (v - 0.3).abs() < 1e-15));
    }

    #[test]
    fn coarse_rejected() {
        let c = DensityProfile::step(0.2, 0.8, 0.0).unwrap();
        assert!(matches!(solver(0.5).evolve_p(&c, 1.0), Err(Error::ResolutionTooCoarse { .. })));
        let tor = DensityProfile::from_torus_cells(&[0.3; 4]).unwrap();
        assert_eq!(solver(0.01).evolve_p(&tor, 1.0), Err(Error::DomainMismatch));
    }

    #[test]
    fn torus_mass_conserved_each_step() {
        let m = 200;
        let cells: Vec<f64> = (0..m)
            .map(|i| 0.5 + 0.3 * (2.0 * std::f64::consts::PI * (i as f64 + 0.5) / m as f64).sin())
            .collect();
        let u = DensityProfile::from_torus_cells(&cells).unwrap();
        let field = solver(1.0 / m as f64).evolve_field(&u, 0.5).unwrap();
        let mass0: f64 = field.rows[0].iter().sum::<f64>() / m as f64;
        for row in &field.rows {
            let mass: f64 = row.iter().sum::<f64>() / m as f64;
            assert!((mass - mass0).abs() < 1e-12);
        }
    }

    #[test]
    fn maximum_principle() {
        let u = DensityProfile::line(vec![0.0, 0.3, 0.5, 1.0], vec![0.1, 0.9, 0.2, 0.7, 0.1]).unwrap();
        let out = solver(0.005).evolve_p(&u, 0.7).unwrap();
        assert!(out.min_value() >= 0.1 - 1e-12 && out.max_value() <= 0.9 + 1e-12);
    }
}
