use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::VertexEnsemble;

/// Empirical law of window states, keyed by [`VertexEnsemble::pack`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub shape: (usize, usize),
    pub counts: BTreeMap<u64, u64>,
    pub total: u64,
}

impl Histogram {
    pub fn new(shape: (usize, usize)) -> Self {
        Histogram { shape, counts: BTreeMap::new(), total: 0 }
    }

    pub fn add(&mut self, key: u64) {
        *self.counts.entry(key).or_default() += 1;
        self.total += 1;
    }

    pub fn add_window(&mut self, w: &VertexEnsemble) -> Result<()> {
        if (w.width, w.height) != self.shape {
            return Err(Error::MixedShapes);
        }
        self.add(w.pack());
        Ok(())
    }

    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if other.shape != self.shape {
            return Err(Error::MixedShapes);
        }
        for (&k, &c) in &other.counts {
            *self.counts.entry(k).or_default() += c;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn frequency(&self, key: u64) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.counts.get(&key).copied().unwrap_or(0) as f64 / self.total as f64
    }
}

/// Half the L1 distance between two normalized histograms of the same window shape.
pub fn tv_distance(a: &Histogram, b: &Histogram) -> Result<f64> {
    if a.shape != b.shape {
        return Err(Error::SupportMismatch);
    }
    let mut keys: Vec<u64> = a.counts.keys().chain(b.counts.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(0.5 * keys.iter().map(|&k| (a.frequency(k) - b.frequency(k)).abs()).sum::<f64>())
}

/// Total variation between an empirical histogram and an exact law keyed the same way.
pub fn tv_to_law(h: &Histogram, law: &BTreeMap<u64, f64>) -> f64 {
    let mut keys: Vec<u64> = h.counts.keys().chain(law.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    0.5 * keys.iter().map(|&k| (h.frequency(k) - law.get(&k).copied().unwrap_or(0.0)).abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(pairs: &[(u64, u64)]) -> Histogram {
        let mut h = Histogram::new((1, 1));
        for &(k, c) in pairs {
            for _ in 0..c {
                h.add(k);
            }
        }
        h
    }

    #[test]
    fn tv_examples() {
        let a = hist(&[(0, 5), (1, 5)]);
        assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(tv_distance(&hist(&[(0, 1)]), &hist(&[(1, 1)])).unwrap(), 1.0);
        let b = hist(&[(0, 6), (1, 4)]);
        assert!((tv_distance(&a, &b).unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(tv_distance(&a, &Histogram::new((2, 1))), Err(Error::SupportMismatch));
    }

    #[test]
    fn shapes_checked() {
        let mut h = Histogram::new((1, 1));
        assert_eq!(h.add_window(&VertexEnsemble::empty(0, 0, 2, 1, false)), Err(Error::MixedShapes));
        h.add_window(&VertexEnsemble::empty(0, 0, 1, 1, false)).unwrap();
        assert_eq!(h.frequency(0), 1.0);
    }
}
