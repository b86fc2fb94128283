use statrs::statistics::Statistics;

use crate::model::ParticleConfiguration;

/// Cumulative particle counts `S(x) = sum_{lo <= i <= x} eta(i)` at scale `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileEstimate {
    pub scale: u64,
    pub lo: i64,
    pub sums: Vec<u64>,
}

impl ProfileEstimate {
    pub fn new(eta: &ParticleConfiguration, lo: i64, hi: i64, scale: u64) -> Self {
        let mut sums = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        let mut acc = 0;
        for occ in eta.occupancy(lo, hi) {
            acc += u64::from(occ);
            sums.push(acc);
        }
        ProfileEstimate { scale, lo, sums }
    }

    /// `S(floor(x N)) / N`, clamped to the observed range.
    pub fn normalized(&self, x: f64) -> f64 {
        let site = (x * self.scale as f64).floor() as i64;
        let idx = (site - self.lo).clamp(-1, self.sums.len() as i64 - 1);
        if idx < 0 {
            0.0
        } else {
            self.sums[idx as usize] as f64 / self.scale as f64
        }
    }

    /// Particle density on sites `(a, b]`.
    pub fn density(&self, a: i64, b: i64) -> f64 {
        let s = |x: i64| -> u64 {
            let idx = (x - self.lo).clamp(-1, self.sums.len() as i64 - 1);
            if idx < 0 {
                0
            } else {
                self.sums[idx as usize]
            }
        };
        (s(b) - s(a)) as f64 / (b - a) as f64
    }
}

/// Sample mean and its standard error.
pub fn mean_sigma(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.mean();
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    (mean, xs.std_dev() / (xs.len() as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        let eta = ParticleConfiguration::line(vec![1, 2, 5]).unwrap();
        let p = ProfileEstimate::new(&eta, 0, 9, 10);
        assert_eq!(p.sums, vec![0, 1, 2, 2, 2, 3, 3, 3, 3, 3]);
        assert!(p.sums.windows(2).all(|w| w[1] - w[0] <= 1));
        assert_eq!(p.normalized(0.25), 0.2);
        assert_eq!(p.density(0, 5), 0.6);
        let (m, s) = mean_sigma(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 1.0).abs() < 1e-12);
    }
}
