use crate::error::{Error, Result};

/// Sites labelled by classes `1..=n`; unlabelled sites are empty.
///
/// `classes[r - 1]` holds the increasing positions of the class `r` particles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiClassConfiguration {
    classes: Vec<Vec<i64>>,
}

impl MultiClassConfiguration {
    pub fn new(classes: Vec<Vec<i64>>) -> Result<Self> {
        for (r, p) in classes.iter().enumerate() {
            if p.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidConfiguration(format!("class {} positions not increasing", r + 1)));
            }
        }
        let mut all: Vec<i64> = classes.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfiguration("two classes share a site".into()));
        }
        Ok(MultiClassConfiguration { classes })
    }

    /// From a per-site label vector starting at `lo`; 0 marks an empty site.
    pub fn from_labels(lo: i64, labels: &[u8], n: usize) -> Result<Self> {
        let mut classes = vec![Vec::new(); n];
        for (i, &c) in labels.iter().enumerate() {
            match c as usize {
                0 => {}
                r if r <= n => classes[r - 1].push(lo + i as i64),
                r => return Err(Error::InvalidConfiguration(format!("label {r} exceeds class count {n}"))),
            }
        }
        Ok(MultiClassConfiguration { classes })
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, r: usize) -> &[i64] {
        &self.classes[r - 1]
    }

    pub fn classes(&self) -> &[Vec<i64>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn class_at(&self, x: i64) -> Option<usize> {
        self.classes.iter().position(|p| p.binary_search(&x).is_ok()).map(|i| i + 1)
    }

    /// All occupied sites in increasing order, ignoring classes.
    pub fn occupied(&self) -> Vec<i64> {
        let mut all: Vec<i64> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Labels on `lo..=hi`, 0 for empty.
    pub fn labels(&self, lo: i64, hi: i64) -> Vec<u8> {
        let mut out = vec![0u8; (hi - lo + 1).max(0) as usize];
        for (r, p) in self.classes.iter().enumerate() {
            for &x in p {
                if (lo..=hi).contains(&x) {
                    out[(x - lo) as usize] = (r + 1) as u8;
                }
            }
        }
        out
    }
}

/// Merge classes by thresholds `0 < j1 < ... < jm <= n`.
///
/// Class `r` in `(j_{i-1}, j_i]` becomes class `i`; classes above `jm` become empty.
pub fn project_classes(config: &MultiClassConfiguration, thresholds: &[usize]) -> Result<MultiClassConfiguration> {
    let ok = !thresholds.is_empty()
        && thresholds[0] >= 1
        && thresholds.windows(2).all(|w| w[0] < w[1])
        && *thresholds.last().unwrap() <= config.n();
    if !ok {
        return Err(Error::BadThresholds);
    }
    let mut prev = 0;
    let mut classes = Vec::with_capacity(thresholds.len());
    for &j in thresholds {
        let mut merged: Vec<i64> = config.classes[prev..j].iter().flatten().copied().collect();
        merged.sort_unstable();
        classes.push(merged);
        prev = j;
    }
    Ok(MultiClassConfiguration { classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_shared_sites() {
        assert!(MultiClassConfiguration::new(vec![vec![0, 2], vec![2]]).is_err());
        assert!(MultiClassConfiguration::new(vec![vec![2, 0]]).is_err());
    }

    #[test]
    fn projection() {
        let c = MultiClassConfiguration::from_labels(0, &[1, 2, 0, 3, 1], 3).unwrap();
        assert_eq!(project_classes(&c, &[3]).unwrap().class(1), &[0, 1, 3, 4]);
        assert_eq!(project_classes(&c, &[1]).unwrap().class(1), &[0, 4]);
        let two = project_classes(&c, &[1, 3]).unwrap();
        assert_eq!(two.labels(0, 4), vec![1, 2, 0, 2, 1]);
        assert_eq!(project_classes(&c, &[2, 2]), Err(Error::BadThresholds));
        assert_eq!(project_classes(&c, &[4]), Err(Error::BadThresholds));
        assert_eq!(project_classes(&c, &[]), Err(Error::BadThresholds));
    }

    #[test]
    fn labels_roundtrip() {
        let l = [0u8, 2, 1, 0, 2];
        let c = MultiClassConfiguration::from_labels(-2, &l, 2).unwrap();
        assert_eq!(c.labels(-2, 2), l);
        assert_eq!(c.class_at(0), Some(1));
        assert_eq!(c.class_at(1), None);
    }
}
