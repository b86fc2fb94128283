//! Order-preserving coupling of two line systems `p >= q`.
//!
//! Randomness is indexed by particle. For configurations that differ by one
//! step at index `k`, particles `k-1` and `k` are updated jointly so the
//! order survives. Larger differences are bridged by a chain of one-step
//! differences, glued by resampling each link's randomness from its
//! conditional law given the previous link's outcome.

use crate::error::{Error, Result};
use crate::model::{geometric_from_uniform, Randomness, Stream};

#[derive(Debug, Clone)]
struct Omega {
    chi: Vec<bool>,
    jump: Vec<u64>,
}

struct Fresh<'a> {
    rng: &'a Randomness,
    t: i64,
    link: usize,
    ln_b2: f64,
}

impl Fresh<'_> {
    fn u(&self, i: usize, slot: usize) -> f64 {
        self.rng.uniform(Stream::Coupling, self.t, i as i64, self.link * 4 + slot)
    }
    fn chi(&self, i: usize) -> bool {
        self.u(i, 0) < self.rng.b1
    }
    fn jump(&self, i: usize) -> u64 {
        geometric_from_uniform(self.u(i, 1), self.ln_b2)
    }
    /// Jump conditioned on being at least `min`.
    fn jump_at_least(&self, i: usize, min: i64) -> u64 {
        (min - 1).max(0) as u64 + geometric_from_uniform(self.u(i, 2), self.ln_b2)
    }
    fn omega(&self, n: usize) -> Omega {
        Omega { chi: (0..n).map(|i| self.chi(i)).collect(), jump: (0..n).map(|i| self.jump(i)).collect() }
    }
}

#[inline]
fn capped(target: i64, cap: Option<i64>) -> i64 {
    cap.map_or(target, |c| target.min(c))
}

/// One step with the joint rule at the pair `(k-1, k)`; `k == 0` means no pair.
fn apply(r: &[i64], k: usize, w: &Omega) -> Vec<i64> {
    let n = r.len();
    let mut out: Vec<i64> = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let x = r[i];
        let forced = out.last() == Some(&x);
        if k >= 1 && i + 1 == k {
            let (y, z) = (r[k], r.get(k + 1).copied());
            let single_k = |w: &Omega| if w.chi[k] { y } else { capped(y + w.jump[k] as i64, z) };
            if !forced && w.chi[i] {
                out.push(x);
                out.push(single_k(w));
            } else {
                let a = x + w.jump[i] as i64;
                if a < y {
                    out.push(a);
                    out.push(single_k(w));
                } else {
                    out.push(y);
                    out.push(capped(a + 1, z));
                }
            }
            i += 2;
            continue;
        }
        let cap = r.get(i + 1).copied();
        out.push(if !forced && w.chi[i] { x } else { capped(x + w.jump[i] as i64, cap) });
        i += 1;
    }
    out
}

/// Jump consistent with moving from `x` to `w` under cap `cap`.
fn jump_given(f: &Fresh<'_>, i: usize, x: i64, w: i64, cap: Option<i64>) -> u64 {
    if cap == Some(w) {
        f.jump_at_least(i, w - x)
    } else {
        (w - x) as u64
    }
}

/// Draw randomness from its conditional law given `apply(r, k, .) == out`.
fn condition(r: &[i64], k: usize, out: &[i64], f: &Fresh<'_>) -> Omega {
    let n = r.len();
    let mut w = f.omega(n);
    let single = |w: &mut Omega, i: usize, forced: bool| {
        let (x, cap) = (r[i], r.get(i + 1).copied());
        if !forced && out[i] == x {
            w.chi[i] = true;
        } else {
            if !forced {
                w.chi[i] = false;
            }
            w.jump[i] = jump_given(f, i, x, out[i], cap);
        }
    };
    let mut i = 0;
    while i < n {
        let forced = i > 0 && out[i - 1] == r[i];
        if k >= 1 && i + 1 == k {
            let (x, y, z) = (r[i], r[k], r.get(k + 1).copied());
            let (u, v) = (out[i], out[k]);
            if u == x {
                w.chi[i] = true;
                single(&mut w, k, false);
            } else if u < y {
                if !forced {
                    w.chi[i] = false;
                }
                w.jump[i] = (u - x) as u64;
                single(&mut w, k, false);
            } else {
                if !forced {
                    w.chi[i] = false;
                }
                w.jump[i] = if z == Some(v) { f.jump_at_least(i, v - 1 - x) } else { (v - 1 - x) as u64 };
            }
            i += 2;
            continue;
        }
        single(&mut w, i, forced);
        i += 1;
    }
    w
}

/// Coupled one-step update of `p >= q`; returns `(p', q')` with `p' >= q'`.
pub fn monotone_step(p: &[i64], q: &[i64], rng: &Randomness, t: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    if p.len() != q.len() {
        return Err(Error::OrderViolation { index: p.len().min(q.len()) });
    }
    if let Some(index) = p.iter().zip(q).position(|(a, b)| a < b) {
        return Err(Error::OrderViolation { index });
    }
    for s in [p, q] {
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfiguration("positions not strictly increasing".into()));
        }
    }
    let ln_b2 = rng.b2.ln();
    let fresh = |link| Fresh { rng, t, link, ln_b2 };

    let mut r = q.to_vec();
    let Some(k0) = next_link(&r, p) else {
        let out = apply(q, 0, &fresh(0).omega(q.len()));
        return Ok((out.clone(), out));
    };
    let w0 = fresh(0).omega(q.len());
    let q_out = apply(&r, k0, &w0);
    r[k0] += 1;
    let mut cur = apply(&r, k0, &w0);
    let mut link = 1;
    while let Some(k) = next_link(&r, p) {
        let w = condition(&r, k, &cur, &fresh(link));
        debug_assert_eq!(apply(&r, k, &w), cur);
        r[k] += 1;
        cur = apply(&r, k, &w);
        link += 1;
    }
    Ok((cur, q_out))
}

/// Rightmost index where `r` still lies below `p`.
fn next_link(r: &[i64], p: &[i64]) -> Option<usize> {
    (0..r.len()).rev().find(|&i| r[i] < p[i])
}
