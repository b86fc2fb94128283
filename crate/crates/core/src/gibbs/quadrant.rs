use crate::model::{ModelParams, Randomness, Stream, VertexEnsemble};

/// Fill `e` row by row from its left and bottom input edges, which must already be set.
///
/// Each vertex completes its entering arrows with the stochastic weights,
/// using one uniform keyed by the vertex.
pub(crate) fn fill_from_inputs(e: &mut VertexEnsemble, params: &ModelParams, rng: &Randomness) {
    let (x0, y0) = (e.x0, e.y0);
    for y in y0..y0 + e.height as i64 {
        for x in x0..x0 + e.width as i64 {
            let i1 = e.vertical(x, y - 1);
            let j1 = e.horizontal(x - 1, y);
            let (i2, j2) = match (i1, j1) {
                (1, 0) if rng.uniform(Stream::Aux, y, x, 0) < params.b1 => (1, 0),
                (1, 0) => (0, 1),
                (0, 1) if rng.uniform(Stream::Aux, y, x, 0) < params.b2 => (0, 1),
                (0, 1) => (1, 0),
                (a, b) => (a, b),
            };
            e.set_vertical(x, y, i2);
            e.set_horizontal(x, y, j2);
        }
    }
}

/// Quadrant `[1, n]^2` with independent entrances: Bernoulli(`left`) on the
/// y-axis and Bernoulli(`bottom`) on the x-axis.
pub fn sample_quadrant_with(left: f64, bottom: f64, n: usize, params: &ModelParams, seed: u64) -> VertexEnsemble {
    let rng = Randomness::new(seed, params);
    let mut e = VertexEnsemble::empty(1, 1, n, n, false);
    for k in 1..=n as i64 {
        e.set_horizontal(0, k, u8::from(rng.bernoulli(Stream::Init, 0, k, 1, left)));
        e.set_vertical(k, 0, u8::from(rng.bernoulli(Stream::Init, 0, k, 2, bottom)));
    }
    fill_from_inputs(&mut e, params, &rng);
    e
}

/// Quadrant with double-sided `(phi(rho), rho)` Bernoulli entrances.
///
/// Along every down-right path the edges stay independent with these means,
/// so any sub-window is an exact sample of the Gibbs measure.
pub fn sample_quadrant(rho: f64, n: usize, params: &ModelParams, seed: u64) -> VertexEnsemble {
    sample_quadrant_with(params.phi(rho), rho, n, params, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_ensemble;

    #[test]
    fn extremes() {
        let p = ModelParams::default();
        let e = sample_quadrant(0.0, 12, &p, 1);
        assert!(validate_ensemble(&e));
        assert_eq!(e.horizontal_count(), 0);
        assert!((1..=12).all(|x| (0..=12).all(|y| e.vertical(x, y) == 0)));
        let e = sample_quadrant(1.0, 12, &p, 1);
        for y in 0..=12 {
            for x in 1..=12 {
                assert_eq!(e.vertical(x, y), 1);
            }
        }
    }

    #[test]
    fn far_edge_means() {
        let p = ModelParams::default();
        let (mut v, mut h, mut n) = (0.0, 0.0, 0.0);
        for seed in 0..400 {
            let e = sample_quadrant(0.4, 40, &p, seed);
            assert!(validate_ensemble(&e));
            for y in 20..=40 {
                for x in 20..=40 {
                    v += e.vertical(x, y) as f64;
                    h += e.horizontal(x, y) as f64;
                    n += 1.0;
                }
            }
        }
        // Correlated sites: allow a generous band around the exact means.
        assert!((v / n - 0.4).abs() < 0.01, "{}", v / n);
        assert!((h / n - 0.5).abs() < 0.01, "{}", h / n);
    }
}
