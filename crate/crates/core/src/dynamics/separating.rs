use crate::error::{Error, Result};
use crate::model::SpaceTimeCoins;

/// Left-tail truncation level for the crossing probability.
pub const TAIL_TOLERANCE: f64 = 1e-15;

/// Separating integers of a window together with the left-tail scan depth used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separating {
    pub ks: Vec<i64>,
    pub depth: i64,
}

/// Smallest `D` with `b2^(D+1) / (1 - b2) < TAIL_TOLERANCE`.
///
/// Sites more than `D` to the left of the target jump past it with total
/// probability below the tolerance, so the infinite max is cut there.
pub fn tail_depth(b2: f64) -> i64 {
    let mut d = 0i64;
    while b2.powi(d as i32 + 1) / (1.0 - b2) >= TAIL_TOLERANCE {
        d += 1;
    }
    d
}

/// Whether `k` separates the step at absolute time `t`:
/// `chi_t(k+1) = 0` and no site `m <= k` jumps past `k+1`.
pub fn separates_step<R: SpaceTimeCoins + ?Sized>(rng: &R, t: i64, k: i64, depth: i64) -> bool {
    !rng.chi_at(t, k + 1) && (k - depth..=k).all(|m| m + rng.jump_at(t, m) as i64 <= k + 1)
}

/// All `k` in `lo..=hi` that separate every step `t0+1 ..= t0+nsteps`.
pub fn find_separating<R: SpaceTimeCoins + ?Sized>(rng: &R, t0: i64, nsteps: i64, lo: i64, hi: i64) -> Result<Separating> {
    if nsteps < 1 {
        return Err(Error::RangeViolation(format!("nsteps={nsteps} must be at least 1")));
    }
    let depth = tail_depth(rng.b2());
    let width = (hi - lo + 1).max(0) as usize;
    let mut ok = vec![true; width];
    for s in 1..=nsteps {
        let t = t0 + s;
        let start = lo + s - 1 - depth;
        // reach[i] = max over m in [start, start+i] of m + jump_t(m)
        let mut best = i64::MIN;
        let mut reach = Vec::with_capacity(width + depth as usize);
        for m in start..=hi + s - 1 {
            best = best.max(m + rng.jump_at(t, m) as i64);
            reach.push(best);
        }
        for (i, flag) in ok.iter_mut().enumerate().filter(|(_, f)| **f) {
            let k = lo + i as i64;
            let site = k + s;
            let r = reach[(site - 1 - start) as usize];
            *flag = !rng.chi_at(t, site) && r <= site;
        }
    }
    let ks: Vec<i64> = ok.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| lo + i as i64).collect();
    if ks.is_empty() {
        return Err(Error::NoneFound { lo, hi });
    }
    Ok(Separating { ks, depth })
}

/// Largest one-step separating `k <= start`, scanning at most `cap` sites.
pub(crate) fn separating_at_or_below<R: SpaceTimeCoins + ?Sized>(rng: &R, t: i64, start: i64, depth: i64, cap: i64) -> Result<i64> {
    const CHUNK: i64 = 64;
    let mut top = start;
    while start - top < cap {
        let bottom = top - CHUNK + 1;
        let base = bottom - depth;
        let mut best = i64::MIN;
        let reach: Vec<i64> = (base..=top)
            .map(|m| {
                best = best.max(m + rng.jump_at(t, m) as i64);
                best
            })
            .collect();
        for k in (bottom..=top).rev() {
            if reach[(k - base) as usize] <= k + 1 && !rng.chi_at(t, k + 1) {
                return Ok(k);
            }
        }
        top = bottom - 1;
    }
    Err(Error::NoneFound { lo: start - cap, hi: start })
}

/// Smallest one-step separating `k >= start`, scanning at most `cap` sites.
pub(crate) fn separating_at_or_above<R: SpaceTimeCoins + ?Sized>(rng: &R, t: i64, start: i64, depth: i64, cap: i64) -> Result<i64> {
    let mut best = i64::MIN;
    for m in start - depth..start {
        best = best.max(m + rng.jump_at(t, m) as i64);
    }
    for k in start..=start + cap {
        best = best.max(k + rng.jump_at(t, k) as i64);
        if best <= k + 1 && !rng.chi_at(t, k + 1) {
            return Ok(k);
        }
    }
    Err(Error::NoneFound { lo: start, hi: start + cap })
}
