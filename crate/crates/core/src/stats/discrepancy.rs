use crate::error::{Error, Result};
use crate::model::ParticleConfiguration;
use crate::pde::{delta_distance, DensityProfile};

/// 0 if `eta` and `xi` are ordered on `[lo, hi]` (either way), else 1.
pub fn discrepancy_r(eta: &ParticleConfiguration, xi: &ParticleConfiguration, lo: i64, hi: i64) -> u8 {
    let (mut above, mut below) = (false, false);
    for x in lo..=hi {
        match (eta.occupied(x), xi.occupied(x)) {
            (true, false) => above = true,
            (false, true) => below = true,
            _ => {}
        }
    }
    u8::from(above && below)
}

/// `(1/N) max_x |sum_{i <= x} (eta(i) - xi(i))|`.
pub fn delta_n(eta: &ParticleConfiguration, xi: &ParticleConfiguration, n: u64) -> f64 {
    let (a, b) = (eta.positions(), xi.positions());
    let (mut i, mut j) = (0, 0);
    let (mut gap, mut worst) = (0i64, 0i64);
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&p), Some(&q)) => p.min(q),
            (Some(&p), None) => p,
            (None, Some(&q)) => q,
            (None, None) => unreachable!(),
        };
        while a.get(i) == Some(&x) {
            gap += 1;
            i += 1;
        }
        while b.get(j) == Some(&x) {
            gap -= 1;
            j += 1;
        }
        worst = worst.max(gap.abs());
    }
    worst as f64 / n as f64
}

/// The rescaled configuration `y -> eta(floor(y N))` as a line profile.
fn rescaled(eta: &ParticleConfiguration, n: u64) -> DensityProfile {
    let scale = n as f64;
    let mut bps: Vec<f64> = Vec::new();
    let mut values = vec![0.0];
    let mut run_end: Option<i64> = None;
    for &x in eta.positions() {
        if run_end == Some(x) {
            *bps.last_mut().unwrap() = (x + 1) as f64 / scale;
        } else {
            bps.push(x as f64 / scale);
            values.push(1.0);
            bps.push((x + 1) as f64 / scale);
            values.push(0.0);
        }
        run_end = Some(x + 1);
    }
    DensityProfile::line(bps, values).expect("runs are disjoint and ordered")
}

/// `sup_x |int_{-inf}^x (eta(floor(y N)) - f(y)) dy|`, exact for piecewise-constant `f`.
pub fn delta_n_profile(eta: &ParticleConfiguration, f: &DensityProfile, n: u64) -> Result<f64> {
    if !f.has_compact_support() || f.domain() != crate::pde::Domain::Line {
        return Err(Error::UnboundedSupport);
    }
    delta_distance(&rescaled(eta, n), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(p: &[i64]) -> ParticleConfiguration {
        ParticleConfiguration::line(p.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(discrepancy_r(&line(&[0]), &line(&[1]), 0, 1), 1);
        assert_eq!(discrepancy_r(&line(&[0]), &line(&[0, 1]), 0, 1), 0);
        assert_eq!(delta_n(&line(&[1, 2]), &line(&[1, 2]), 10), 0.0);
        assert_eq!(delta_n(&line(&[1, 2, 5]), &line(&[1, 2]), 10), 0.1);
        let f = DensityProfile::line(vec![0.0, 0.3], vec![0.0, 1.0, 0.0]).unwrap();
        assert!(delta_n_profile(&line(&[0, 1, 2]), &f, 10).unwrap() < 1e-15);
        let g = DensityProfile::step(0.0, 1.0, 0.0).unwrap();
        assert_eq!(delta_n_profile(&line(&[0]), &g, 10), Err(Error::UnboundedSupport));
    }

    fn naive_r(a: &[bool], b: &[bool]) -> u8 {
        let ge = a.iter().zip(b).all(|(x, y)| x >= y);
        let le = a.iter().zip(b).all(|(x, y)| x <= y);
        u8::from(!(ge || le))
    }

    fn config(bits: &[bool]) -> ParticleConfiguration {
        ParticleConfiguration::from_occupancy(0, bits)
    }

    proptest! {
        #[test]
        fn r_matches_naive(a in proptest::collection::vec(any::<bool>(), 12), b in proptest::collection::vec(any::<bool>(), 12)) {
            let (ea, eb) = (config(&a), config(&b));
            prop_assert_eq!(discrepancy_r(&ea, &eb, 0, 11), naive_r(&a, &b));
            prop_assert_eq!(discrepancy_r(&ea, &eb, 0, 11), discrepancy_r(&eb, &ea, 0, 11));
            // Growing the interval can only create a discrepancy.
            prop_assert!(discrepancy_r(&ea, &eb, 2, 8) <= discrepancy_r(&ea, &eb, 0, 11));
        }

        #[test]
        fn delta_n_is_a_metric(
            a in proptest::collection::vec(any::<bool>(), 16),
            b in proptest::collection::vec(any::<bool>(), 16),
            c in proptest::collection::vec(any::<bool>(), 16),
        ) {
            let (x, y, z) = (config(&a), config(&b), config(&c));
            prop_assert!(delta_n(&x, &z, 7) <= delta_n(&x, &y, 7) + delta_n(&y, &z, 7) + 1e-12);
            prop_assert_eq!(delta_n(&x, &y, 7), delta_n(&y, &x, 7));
            prop_assert_eq!(delta_n(&x, &y, 7) == 0.0, a == b || {
                let s = |v: &[bool], k: usize| v[..=k].iter().filter(|&&q| q).count();
                (0..16).all(|k| s(&a, k) == s(&b, k))
            });
        }

        #[test]
        fn profile_distance_matches_grid(a in proptest::collection::vec(any::<bool>(), 10)) {
            // Against the constant 1/2 on [0, 1): the sup sits on a grid point.
            let f = DensityProfile::line(vec![0.0, 1.0], vec![0.0, 0.5, 0.0]).unwrap();
            let eta = config(&a);
            let mut best: f64 = 0.0;
            let mut s: f64 = 0.0;
            for &bit in &a {
                s += if bit { 0.1 } else { 0.0 } - 0.05;
                best = best.max(s.abs());
            }
            prop_assert!((delta_n_profile(&eta, &f, 10).unwrap() - best).abs() < 1e-12);
        }
    }
}
