use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::model::SiteCoins;

use super::config::MultiClassConfiguration;

/// One multi-class step. Lower classes move first and ignore higher ones.
///
/// A class `r` particle at `x` stays if a lower particle jumped across `x`,
/// moves if some particle already landed on `x`, and otherwise follows its
/// coin. A mover walks `jump` sites skipping stationary lower particles, and
/// stops early at the next moving lower particle or the next class `r` particle.
///
/// Output positions keep the input order within each class, so `(r, k)`
/// identifies the same particle before and after.
pub fn step_multiclass<C: SiteCoins + ?Sized>(
    config: &MultiClassConfiguration,
    coins: &C,
) -> Result<MultiClassConfiguration> {
    let mut moved: BTreeMap<i64, i64> = BTreeMap::new();
    let mut stationary: BTreeSet<i64> = BTreeSet::new();
    let mut landed: BTreeSet<i64> = BTreeSet::new();
    let mut next = Vec::with_capacity(config.n());
    for (ri, p) in config.classes().iter().enumerate() {
        let r = ri + 1;
        let mut out: Vec<i64> = Vec::with_capacity(p.len());
        let mut fresh_moves = Vec::new();
        for (k, &x) in p.iter().enumerate() {
            // Moving intervals are disjoint, so the nearest origin below x decides.
            let passed = moved.range(..x).next_back().is_some_and(|(_, &l)| l > x);
            let forced = !passed && (landed.contains(&x) || out.last() == Some(&x));
            if passed || (!forced && coins.chi(x, r)?) {
                out.push(x);
                continue;
            }
            let j = coins.jump(x, r)?;
            let u = moved.range(x + 1..).next().map_or(i64::MAX, |(&o, _)| o);
            let cap = p.get(k + 1).copied().unwrap_or(i64::MAX).min(u);
            let mut y = x;
            let mut left = j;
            while left > 0 && y < cap {
                y += 1;
                if !stationary.contains(&y) {
                    left -= 1;
                }
            }
            out.push(y);
            fresh_moves.push((x, y));
        }
        for (&x, &y) in p.iter().zip(&out) {
            if x == y {
                stationary.insert(x);
            }
            landed.insert(y);
        }
        moved.extend(fresh_moves);
        next.push(out);
    }
    MultiClassConfiguration::new(next)
}
