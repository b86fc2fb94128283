use std::collections::BTreeMap;

use crate::model::{vertex_weight, ModelParams, VertexEnsemble};

/// Exact law of a `width x height` window under the Gibbs measure of slope `(rho, phi(rho))`.
///
/// The left and bottom entrances of a window are independent Bernoulli
/// edges with means `phi(rho)` and `rho`, so the law is a finite sum over
/// entrances and vertex choices. Keys are [`VertexEnsemble::pack`] values.
pub fn exact_window_law(rho: f64, width: usize, height: usize, params: &ModelParams) -> BTreeMap<u64, f64> {
    assert!(width * height <= 9, "window too large to enumerate");
    let f = params.phi(rho);
    let inputs = width + height;
    let mut law = BTreeMap::new();
    for mask in 0u32..(1 << inputs) {
        let mut e = VertexEnsemble::empty(0, 0, width, height, false);
        let mut p = 1.0;
        for x in 0..width {
            let b = ((mask >> x) & 1) as u8;
            e.set_vertical(x as i64, -1, b);
            p *= if b == 1 { rho } else { 1.0 - rho };
        }
        for y in 0..height {
            let b = ((mask >> (width + y)) & 1) as u8;
            e.set_horizontal(-1, y as i64, b);
            p *= if b == 1 { f } else { 1.0 - f };
        }
        if p > 0.0 {
            fill(&mut e, 0, p, params, &mut law);
        }
    }
    law
}

fn fill(e: &mut VertexEnsemble, idx: usize, w: f64, params: &ModelParams, law: &mut BTreeMap<u64, f64>) {
    if w == 0.0 {
        return;
    }
    if idx == e.width * e.height {
        *law.entry(e.pack()).or_default() += w;
        return;
    }
    let (x, y) = ((idx % e.width) as i64, (idx / e.width) as i64);
    let (i1, j1) = (e.vertical(x, y - 1), e.horizontal(x - 1, y));
    for (i2, j2) in [(i1, j1), (j1, i1)] {
        if i1 != j1 || i2 == i1 {
            e.set_vertical(x, y, i2);
            e.set_horizontal(x, y, j2);
            fill(e, idx + 1, w * vertex_weight((i1, j1, i2, j2), params.b1, params.b2), params, law);
        }
        if i1 == j1 {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::sample_quadrant;
    use crate::stats::{tv_to_law, Histogram};

    #[test]
    fn normalized_and_consistent() {
        let p = ModelParams::default();
        for (w, h) in [(1, 1), (2, 1), (2, 2), (3, 3)] {
            let law = exact_window_law(0.4, w, h, &p);
            assert!((law.values().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        // Mean vertical occupancy of a 1x1 window is rho.
        let law = exact_window_law(0.3, 1, 1, &p);
        let mean: f64 = law.iter().filter(|(k, _)| *k & 0b10 != 0).map(|(_, v)| v).sum();
        assert!((mean - 0.3).abs() < 1e-12);
    }

    #[test]
    fn quadrant_windows_follow_exact_law() {
        let p = ModelParams::default();
        let law = exact_window_law(0.6, 2, 2, &p);
        let mut h = Histogram::new((2, 2));
        for seed in 0..20_000 {
            let q = sample_quadrant(0.6, 6, &p, seed);
            h.add_window(&q.sub_window(4, 4, 2, 2)).unwrap();
        }
        let tv = tv_to_law(&h, &law);
        assert!(tv < 0.03, "tv = {tv}");
    }
}
