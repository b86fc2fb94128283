use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 10_000;

/// One row of an empirical displacement tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPoint {
    pub v: u64,
    pub empirical: f64,
    pub bound: f64,
    pub sigma: f64,
}

impl TailPoint {
    /// Whether the empirical tail exceeds the bound by more than `z` standard errors.
    pub fn violates(&self, z: f64) -> bool {
        self.empirical > self.bound + z * self.sigma
    }
}

/// `P[displacement >= v]` for `v = 1..=vmax` against the bound `b2^(v-1)`.
///
/// `sigma` is the binomial standard error at the bound.
pub fn tagged_speed_tail(samples: &[u64], b2: f64, vmax: u64) -> Result<Vec<TailPoint>> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { need: MIN_SAMPLES, got: samples.len() });
    }
    let n = samples.len() as f64;
    let mut hist = vec![0u64; vmax as usize + 2];
    for &d in samples {
        hist[(d.min(vmax + 1)) as usize] += 1;
    }
    let mut above: u64 = hist[vmax as usize + 1];
    let mut out = Vec::with_capacity(vmax as usize);
    for v in (1..=vmax).rev() {
        above += hist[v as usize];
        let bound = b2.powi(v as i32 - 1);
        out.push(TailPoint { v, empirical: above as f64 / n, bound, sigma: (bound * (1.0 - bound) / n).sqrt() });
    }
    out.reverse();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few() {
        assert_eq!(tagged_speed_tail(&[1; 10], 0.5, 4), Err(Error::TooFewSamples { need: 10_000, got: 10 }));
    }

    #[test]
    fn tail_counts() {
        let mut s = vec![0u64; 5000];
        s.extend(vec![1u64; 2500]);
        s.extend(vec![4u64; 2500]);
        let t = tagged_speed_tail(&s, 0.5, 4).unwrap();
        assert_eq!(t[0].empirical, 0.5);
        assert_eq!(t[1].empirical, 0.25);
        assert_eq!(t[3].empirical, 0.25);
        assert_eq!(t[3].bound, 0.125);
        assert!(t[3].violates(4.0));
        assert!(!t[0].violates(4.0));
    }
}
