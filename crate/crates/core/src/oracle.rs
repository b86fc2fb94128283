//! Exact one-step laws by exhaustive enumeration, for checking the samplers on small systems.

use std::collections::BTreeMap;

use crate::model::vertex_weight;

const EMPTY: u8 = 0;

#[inline]
fn rank(c: u8) -> u8 {
    if c == EMPTY {
        u8::MAX
    } else {
        c
    }
}

/// Possible `(i2, j2, weight)` at a multi-class vertex with inputs `(i1, j1)`; 0 is empty.
fn vertex_moves(i1: u8, j1: u8, b1: f64, b2: f64) -> [(u8, u8, f64); 2] {
    if i1 == j1 {
        [(i1, j1, 1.0), (i1, j1, 0.0)]
    } else if rank(i1) < rank(j1) {
        [(i1, j1, b1), (j1, i1, 1.0 - b1)]
    } else {
        [(i1, j1, b2), (j1, i1, 1.0 - b2)]
    }
}

/// Exact law of one row on sites `0..classes.len()` entered by no arrow from the left.
///
/// `classes[x]` is the class at site `x` (0 for empty). The outcome is the new
/// class vector together with the class of the arrow leaving the right edge,
/// which stands for a particle that lands beyond the last site.
pub fn line_row_law(classes: &[u8], b1: f64, b2: f64) -> BTreeMap<(Vec<u8>, u8), f64> {
    fn go(
        x: usize,
        h: u8,
        w: f64,
        classes: &[u8],
        out: &mut Vec<u8>,
        b: (f64, f64),
        law: &mut BTreeMap<(Vec<u8>, u8), f64>,
    ) {
        if w == 0.0 {
            return;
        }
        if x == classes.len() {
            *law.entry((out.clone(), h)).or_default() += w;
            return;
        }
        for (i2, j2, wv) in vertex_moves(classes[x], h, b.0, b.1) {
            out.push(i2);
            go(x + 1, j2, w * wv, classes, out, b, law);
            out.pop();
        }
    }
    let mut law = BTreeMap::new();
    go(0, EMPTY, 1.0, classes, &mut Vec::new(), (b1, b2), &mut law);
    law
}

/// Single-class row law as position lists; a particle beyond the box sits at `occ.len()`.
pub fn line_position_law(lo: i64, occ: &[bool], b1: f64, b2: f64) -> BTreeMap<Vec<i64>, f64> {
    let classes: Vec<u8> = occ.iter().map(|&b| u8::from(b)).collect();
    let mut law = BTreeMap::new();
    for ((out, exit), w) in line_row_law(&classes, b1, b2) {
        let mut pos: Vec<i64> = out.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| lo + i as i64).collect();
        if exit == 1 {
            pos.push(lo + occ.len() as i64);
        }
        *law.entry(pos).or_default() += w;
    }
    law
}

/// The same single-class law, by enumerating stay coins and jumps particle by particle.
///
/// Jumps are truncated where every longer jump gives the same outcome; the
/// remaining geometric tail mass is folded into the last value.
pub fn line_position_law_by_coins(positions: &[i64], hi: i64, b1: f64, b2: f64) -> BTreeMap<Vec<i64>, f64> {
    fn go(
        k: usize,
        p: &[i64],
        hi: i64,
        b: (f64, f64),
        w: f64,
        out: &mut Vec<i64>,
        law: &mut BTreeMap<Vec<i64>, f64>,
    ) {
        if k == p.len() {
            *law.entry(out.clone()).or_default() += w;
            return;
        }
        let x = p[k];
        let forced = out.last() == Some(&x);
        if !forced {
            out.push(x);
            go(k + 1, p, hi, b, w * b.0, out, law);
            out.pop();
        }
        let move_w = if forced { w } else { w * (1.0 - b.0) };
        let limit = p.get(k + 1).copied().unwrap_or(hi + 1);
        for j in 1..=(limit - x) {
            let pj = if x + j == limit { b.1.powi(j as i32 - 1) } else { (1.0 - b.1) * b.1.powi(j as i32 - 1) };
            out.push(x + j);
            go(k + 1, p, hi, b, move_w * pj, out, law);
            out.pop();
        }
    }
    let mut law = BTreeMap::new();
    go(0, positions, hi, (b1, b2), 1.0, &mut Vec::new(), &mut law);
    law
}

/// Exact law of the horizontal edge vector of one cylinder row.
///
/// Rows are weighted by the product of vertex weights and normalized; on an
/// empty ring the closed loop of horizontal arrows is excluded.
pub fn ring_row_law(occ: &[bool], b1: f64, b2: f64) -> BTreeMap<Vec<u8>, f64> {
    let n = occ.len();
    let mut law = BTreeMap::new();
    let mut total = 0.0;
    let empty = occ.iter().all(|&o| !o);
    for mask in 0u32..(1 << n) {
        let h: Vec<u8> = (0..n).map(|x| ((mask >> x) & 1) as u8).collect();
        if empty && mask != 0 {
            continue;
        }
        let mut w = 1.0;
        for x in 0..n {
            let h_in = h[(x + n - 1) % n];
            let i1 = u8::from(occ[x]);
            let i2 = (i1 + h_in) as i16 - h[x] as i16;
            if !(0..=1).contains(&i2) {
                w = 0.0;
                break;
            }
            w *= vertex_weight((i1, h_in, i2 as u8, h[x]), b1, b2);
        }
        if w > 0.0 {
            total += w;
            law.insert(h, w);
        }
    }
    for v in law.values_mut() {
        *v /= total;
    }
    law
}

/// New occupancy implied by a ring row.
pub fn ring_outcome(occ: &[bool], h: &[u8]) -> Vec<bool> {
    let n = occ.len();
    (0..n).map(|x| u8::from(occ[x]) + h[(x + n - 1) % n] == h[x] + 1).collect()
}

/// Largest per-outcome deviation in units of the binomial standard error.
///
/// Observed outcomes missing from the exact law count as infinitely far.
pub fn max_z<K: Ord>(law: &BTreeMap<K, f64>, counts: &BTreeMap<K, u64>, n: u64) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, &c) in counts {
        if !law.contains_key(k) && c > 0 {
            return f64::INFINITY;
        }
    }
    for (k, &p) in law {
        let f = counts.get(k).copied().unwrap_or(0) as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        let z = if sigma > 0.0 { (f - p).abs() / sigma } else if f == p { 0.0 } else { f64::INFINITY };
        worst = worst.max(z);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total<K>(law: &BTreeMap<K, f64>) -> f64 {
        law.values().sum()
    }

    #[test]
    fn laws_are_normalized() {
        let (b1, b2) = (0.25, 0.5);
        assert!((total(&line_row_law(&[1, 0, 2, 1, 0, 0], b1, b2)) - 1.0).abs() < 1e-12);
        assert!((total(&ring_row_law(&[true, false, true, false], b1, b2)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coins_agree_with_row_weights() {
        let (b1, b2) = (0.25, 0.5);
        let boxes: [&[bool]; 4] = [
            &[true, false, true, true, false, false],
            &[true, true, true, false, false, false],
            &[false, true, false, false, true, false],
            &[true, false, false, false, false, true],
        ];
        for occ in boxes {
            let pos: Vec<i64> = occ.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as i64).collect();
            let a = line_position_law(0, occ, b1, b2);
            let b = line_position_law_by_coins(&pos, occ.len() as i64 - 1, b1, b2);
            assert_eq!(a.len(), b.len(), "{occ:?}");
            for (k, v) in &a {
                assert!((v - b[k]).abs() < 1e-12, "{occ:?} {k:?}");
            }
        }
    }

    #[test]
    fn two_class_row_respects_priority() {
        // Class 1 at 0 and class 2 at 1: class 1 never lands on a site still held by class 2.
        let law = line_row_law(&[1, 2, 0, 0], 0.25, 0.5);
        for ((out, exit), _) in &law {
            let ones = out.iter().filter(|&&c| c == 1).count() + usize::from(*exit == 1);
            let twos = out.iter().filter(|&&c| c == 2).count() + usize::from(*exit == 2);
            assert_eq!((ones, twos), (1, 1));
        }
    }

    #[test]
    fn ring_single_particle_two_sites() {
        let (b1, b2) = (0.25, 0.5);
        let law = ring_row_law(&[true, false], b1, b2);
        // Stay: b1. Hop to 1: (1-b1)(1-b2). Full loop: b2, since site 0 sees (1,1;1,1).
        let z = b1 + (1.0 - b1) * (1.0 - b2) + b2;
        assert!((law[&vec![0, 0]] - b1 / z).abs() < 1e-12);
        assert!((law[&vec![1, 0]] - (1.0 - b1) * (1.0 - b2) / z).abs() < 1e-12);
        assert!((law[&vec![1, 1]] - b2 / z).abs() < 1e-12);
    }
}
