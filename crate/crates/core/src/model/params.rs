use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Jump parameters and aspect ratio of a six-vertex model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub b1: f64,
    pub b2: f64,
    pub lambda: f64,
}

impl ModelParams {
    /// `(1 - b1) / (1 - b2)`, always above 1.
    pub fn kappa(&self) -> f64 {
        (1.0 - self.b1) / (1.0 - self.b2)
    }

    /// Stationary current at density `z`.
    pub fn phi(&self, z: f64) -> f64 {
        let k = self.kappa();
        k * z / ((k - 1.0) * z + 1.0)
    }

    pub fn flux(&self) -> crate::pde::FluxModel {
        crate::pde::FluxModel::new(self.kappa())
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { b1: 0.25, b2: 0.5, lambda: 1.0 }
    }
}

pub fn make_params(b1: f64, b2: f64, lambda: f64) -> Result<ModelParams> {
    let open_unit = |v: f64| v > 0.0 && v < 1.0;
    if !open_unit(b1) || !open_unit(b2) {
        return Err(Error::RangeViolation(format!("b1={b1}, b2={b2} must lie in (0,1)")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::RangeViolation(format!("lambda={lambda} must be positive")));
    }
    if b1 >= b2 {
        return Err(Error::OrderingViolation { b1, b2 });
    }
    Ok(ModelParams { b1, b2, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_kappa() {
        let p = make_params(0.25, 0.5, 1.0).unwrap();
        assert!((p.kappa() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn ordering_rejected() {
        assert!(matches!(make_params(0.5, 0.25, 1.0), Err(Error::OrderingViolation { .. })));
        assert!(matches!(make_params(0.3, 0.3, 1.0), Err(Error::OrderingViolation { .. })));
    }

    #[test]
    fn range_rejected() {
        assert!(matches!(make_params(0.0, 0.5, 1.0), Err(Error::RangeViolation(_))));
        assert!(matches!(make_params(0.2, 1.0, 1.0), Err(Error::RangeViolation(_))));
        assert!(matches!(make_params(0.2, 0.5, 0.0), Err(Error::RangeViolation(_))));
        assert!(matches!(make_params(f64::NAN, 0.5, 1.0), Err(Error::RangeViolation(_))));
    }

    #[test]
    fn large_kappa() {
        let p = make_params(0.1, 0.9, 2.0).unwrap();
        assert!((p.kappa() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn phi_values() {
        let p = ModelParams::default();
        assert!((p.phi(0.4) - 0.5).abs() < 1e-15);
        assert!((p.phi(0.2) - 0.272727272727).abs() < 1e-9);
        assert!((p.phi(0.8) - 0.857142857142).abs() < 1e-9);
    }
}
