/// Concave flux `phi(z) = kappa z / ((kappa - 1) z + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxModel {
    pub kappa: f64,
}

impl FluxModel {
    pub fn new(kappa: f64) -> Self {
        FluxModel { kappa }
    }

    #[inline]
    pub fn phi(&self, z: f64) -> f64 {
        self.kappa * z / ((self.kappa - 1.0) * z + 1.0)
    }

    #[inline]
    pub fn phi_prime(&self, z: f64) -> f64 {
        let d = (self.kappa - 1.0) * z + 1.0;
        self.kappa / (d * d)
    }

    #[inline]
    pub fn phi_second(&self, z: f64) -> f64 {
        let d = (self.kappa - 1.0) * z + 1.0;
        -2.0 * self.kappa * (self.kappa - 1.0) / (d * d * d)
    }

    /// Inverse of `phi'` on `[1/kappa, kappa]`; clamps outside.
    pub fn phi_prime_inverse(&self, xi: f64) -> f64 {
        let xi = xi.clamp(1.0 / self.kappa, self.kappa);
        (((self.kappa / xi).sqrt() - 1.0) / (self.kappa - 1.0)).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        let f = FluxModel::new(1.5);
        assert_eq!(f.phi(0.0), 0.0);
        assert!((f.phi(1.0) - 1.0).abs() < 1e-15);
        assert!((f.phi_prime(0.0) - 1.5).abs() < 1e-15);
        assert!((f.phi_prime(1.0) - 1.0 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn concave_increasing_on_grid() {
        for kappa in [1.1, 1.5, 3.0, 9.0] {
            let f = FluxModel::new(kappa);
            for i in 0..=1000 {
                let z = i as f64 / 1000.0;
                assert!(f.phi_prime(z) > 0.0);
                assert!(f.phi_second(z) < 0.0);
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let f = FluxModel::new(1.5);
        for i in 1..100 {
            let z = i as f64 / 100.0;
            let h = 1e-6;
            let fd = (f.phi(z + h) - f.phi(z - h)) / (2.0 * h);
            assert!((fd - f.phi_prime(z)).abs() < 1e-8);
            let fd2 = (f.phi_prime(z + h) - f.phi_prime(z - h)) / (2.0 * h);
            assert!((fd2 - f.phi_second(z)).abs() < 1e-6);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FluxModel::new(1.5);
        for i in 0..=100 {
            let z = i as f64 / 100.0;
            assert!((f.phi_prime_inverse(f.phi_prime(z)) - z).abs() < 1e-12);
        }
        assert!((f.phi_prime_inverse(1.0) - 0.449489742783178).abs() < 1e-12);
    }
}
