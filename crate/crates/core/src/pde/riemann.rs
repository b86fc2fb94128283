use crate::error::{Error, Result};

use super::flux::FluxModel;

fn check_state(z: f64) -> Result<()> {
    if (0.0..=1.0).contains(&z) {
        Ok(())
    } else {
        Err(Error::RangeViolation(format!("state {z} outside [0, 1]")))
    }
}

/// Rankine-Hugoniot speed of a jump from `theta` to `rho`.
pub fn shock_speed(theta: f64, rho: f64, flux: &FluxModel) -> Result<f64> {
    check_state(theta)?;
    check_state(rho)?;
    if theta == rho {
        return Err(Error::EqualStates);
    }
    Ok((flux.phi(rho) - flux.phi(theta)) / (rho - theta))
}

/// Entropy solution of the Riemann problem at `xi = x / t`.
pub fn riemann_solution(theta: f64, rho: f64, xi: f64, flux: &FluxModel) -> Result<f64> {
    check_state(theta)?;
    check_state(rho)?;
    if theta == rho {
        return Ok(theta);
    }
    if theta < rho {
        let s = shock_speed(theta, rho, flux)?;
        return Ok(if xi <= s { theta } else { rho });
    }
    Ok(if xi <= flux.phi_prime(theta) {
        theta
    } else if xi >= flux.phi_prime(rho) {
        rho
    } else {
        flux.phi_prime_inverse(xi)
    })
}

/// Self-similar solution `G(x, t)` of step data at `x0`.
///
/// The entropy kind is the Riemann solution; the jump kind keeps the initial
/// jump and moves it at the Rankine-Hugoniot speed, which is a weak solution
/// but violates the entropy condition when `theta > rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannField {
    pub theta: f64,
    pub rho: f64,
    pub x0: f64,
    pub flux: FluxModel,
    pub entropic: bool,
}

impl RiemannField {
    pub fn entropy(theta: f64, rho: f64, x0: f64, flux: FluxModel) -> Result<Self> {
        check_state(theta)?;
        check_state(rho)?;
        Ok(RiemannField { theta, rho, x0, flux, entropic: true })
    }

    pub fn jump(theta: f64, rho: f64, x0: f64, flux: FluxModel) -> Result<Self> {
        check_state(theta)?;
        check_state(rho)?;
        Ok(RiemannField { theta, rho, x0, flux, entropic: false })
    }

    fn is_fan(&self) -> bool {
        self.entropic && self.theta > self.rho
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        if t <= 0.0 || self.theta == self.rho {
            return if x < self.x0 { self.theta } else { self.rho };
        }
        let xi = (x - self.x0) / t;
        if self.is_fan() {
            riemann_solution(self.theta, self.rho, xi, &self.flux).expect("states checked")
        } else {
            let s = (self.flux.phi(self.rho) - self.flux.phi(self.theta)) / (self.rho - self.theta);
            if xi <= s {
                self.theta
            } else {
                self.rho
            }
        }
    }

    /// Speeds of the rays `x = x0 + s t` where the solution is not smooth.
    pub fn singular_speeds(&self) -> Vec<f64> {
        if self.theta == self.rho {
            Vec::new()
        } else if self.is_fan() {
            vec![self.flux.phi_prime(self.theta), self.flux.phi_prime(self.rho)]
        } else {
            vec![(self.flux.phi(self.rho) - self.flux.phi(self.theta)) / (self.rho - self.theta)]
        }
    }

    /// Speed of the ray where the solution crosses level `c`, if it does so continuously.
    pub fn level_speed(&self, c: f64) -> Option<f64> {
        let (lo, hi) = (self.rho.min(self.theta), self.rho.max(self.theta));
        (self.is_fan() && c > lo && c < hi).then(|| self.flux.phi_prime(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shock_examples() {
        let f = FluxModel::new(1.5);
        assert!((shock_speed(0.2, 0.8, &f).unwrap() - 0.974025974).abs() < 1e-9);
        assert!((shock_speed(0.0, 1.0, &f).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(shock_speed(0.4, 0.4, &f), Err(Error::EqualStates));
    }

    #[test]
    fn fan_examples() {
        let f = FluxModel::new(1.5);
        assert!((riemann_solution(0.8, 0.2, 1.0, &f).unwrap() - 0.449489743).abs() < 1e-9);
        assert_eq!(riemann_solution(0.2, 0.8, 0.9, &f).unwrap(), 0.2);
        assert_eq!(riemann_solution(0.4, 0.4, -3.0, &f).unwrap(), 0.4);
        assert!(riemann_solution(1.2, 0.4, 0.0, &f).is_err());
        assert!((f.phi_prime(0.8) - 0.765306122).abs() < 1e-9);
        assert!((f.phi_prime(0.2) - 1.239669421).abs() < 1e-9);
    }

    #[test]
    fn fan_is_continuous_at_edges() {
        let f = FluxModel::new(1.5);
        for (th, rh) in [(0.8, 0.2), (1.0, 0.0), (0.6, 0.5)] {
            let a = f.phi_prime(th);
            let b = f.phi_prime(rh);
            assert!((riemann_solution(th, rh, a + 1e-12, &f).unwrap() - th).abs() < 1e-9);
            assert!((riemann_solution(th, rh, b - 1e-12, &f).unwrap() - rh).abs() < 1e-9);
        }
    }
}
