use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Topology {
    /// Finitely many particles on Z.
    Line,
    /// Sites `0..n` with periodic wrap.
    Ring { n: i64 },
    /// Restriction of a (possibly infinite) configuration to `lo..=hi`.
    Window { lo: i64, hi: i64 },
}

/// A tagged position with explicit sentinels, so jump arithmetic cannot overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    NegInf,
    At(i64),
    PosInf,
}

impl Pos {
    pub fn finite(self) -> Option<i64> {
        match self {
            Pos::At(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticleConfiguration {
    topology: Topology,
    positions: Vec<i64>,
}

fn strictly_increasing(p: &[i64]) -> Option<usize> {
    p.windows(2).position(|w| w[0] >= w[1]).map(|i| i + 1)
}

impl ParticleConfiguration {
    pub fn line(positions: Vec<i64>) -> Result<Self> {
        if let Some(i) = strictly_increasing(&positions) {
            return Err(Error::InvalidConfiguration(format!("positions not increasing at index {i}")));
        }
        Ok(ParticleConfiguration { topology: Topology::Line, positions })
    }

    pub fn ring(n: i64, positions: Vec<i64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidConfiguration(format!("ring size {n} < 1")));
        }
        let mut p: Vec<i64> = positions.into_iter().map(|x| x.rem_euclid(n)).collect();
        p.sort_unstable();
        if strictly_increasing(&p).is_some() {
            return Err(Error::InvalidConfiguration("two particles on one ring site".into()));
        }
        Ok(ParticleConfiguration { topology: Topology::Ring { n }, positions: p })
    }

    pub fn window(lo: i64, hi: i64, positions: Vec<i64>) -> Result<Self> {
        if let Some(i) = strictly_increasing(&positions) {
            return Err(Error::InvalidConfiguration(format!("positions not increasing at index {i}")));
        }
        if positions.first().is_some_and(|&x| x < lo) || positions.last().is_some_and(|&x| x > hi) {
            return Err(Error::InvalidConfiguration("particle outside window".into()));
        }
        Ok(ParticleConfiguration { topology: Topology::Window { lo, hi }, positions })
    }

    /// Line configuration from an occupancy string starting at `lo`.
    pub fn from_occupancy(lo: i64, occ: &[bool]) -> Self {
        let positions = occ.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| lo + i as i64).collect();
        ParticleConfiguration { topology: Topology::Line, positions }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn into_positions(self) -> Vec<i64> {
        self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Position of particle `k`, with sentinels outside `0..len`.
    pub fn tagged(&self, k: i64) -> Pos {
        if k < 0 {
            Pos::NegInf
        } else if k as usize >= self.positions.len() {
            Pos::PosInf
        } else {
            Pos::At(self.positions[k as usize])
        }
    }

    pub fn occupied(&self, x: i64) -> bool {
        let x = match self.topology {
            Topology::Ring { n } => x.rem_euclid(n),
            _ => x,
        };
        self.positions.binary_search(&x).is_ok()
    }

    pub fn occupancy(&self, lo: i64, hi: i64) -> Vec<bool> {
        (lo..=hi).map(|x| self.occupied(x)).collect()
    }

    pub fn count_in(&self, lo: i64, hi: i64) -> usize {
        let a = self.positions.partition_point(|&x| x < lo);
        let b = self.positions.partition_point(|&x| x <= hi);
        b.saturating_sub(a)
    }

    /// `(S_m eta)(x) = eta(x + m)`.
    pub fn shift(&self, m: i64) -> Self {
        match self.topology {
            Topology::Ring { n } => {
                ParticleConfiguration::ring(n, self.positions.iter().map(|&x| x - m).collect())
                    .expect("shift preserves distinctness")
            }
            Topology::Line => ParticleConfiguration {
                topology: Topology::Line,
                positions: self.positions.iter().map(|&x| x - m).collect(),
            },
            Topology::Window { lo, hi } => ParticleConfiguration {
                topology: Topology::Window { lo: lo - m, hi: hi - m },
                positions: self.positions.iter().map(|&x| x - m).collect(),
            },
        }
    }

    /// Coordinatewise `self >= other` over common tagged indices; fails at the first offending index.
    pub fn dominates(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::OrderViolation { index: self.len().min(other.len()) });
        }
        match self.positions.iter().zip(&other.positions).position(|(p, q)| p < q) {
            Some(index) => Err(Error::OrderViolation { index }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unordered() {
        assert!(ParticleConfiguration::line(vec![0, 0]).is_err());
        assert!(ParticleConfiguration::line(vec![3, 1]).is_err());
        assert!(ParticleConfiguration::ring(4, vec![0, 4]).is_err());
        assert!(ParticleConfiguration::window(0, 3, vec![4]).is_err());
    }

    #[test]
    fn sentinels() {
        let c = ParticleConfiguration::line(vec![2, 5]).unwrap();
        assert_eq!(c.tagged(-1), Pos::NegInf);
        assert_eq!(c.tagged(0), Pos::At(2));
        assert_eq!(c.tagged(2), Pos::PosInf);
        assert!(Pos::NegInf < Pos::At(i64::MIN) && Pos::At(i64::MAX) < Pos::PosInf);
    }

    #[test]
    fn ring_reduces() {
        let c = ParticleConfiguration::ring(5, vec![7, -1]).unwrap();
        assert_eq!(c.positions(), &[2, 4]);
        assert!(c.occupied(9) && c.occupied(-3));
    }

    #[test]
    fn shift_roundtrip() {
        let c = ParticleConfiguration::line(vec![-3, 0, 8]).unwrap();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(4).shift(-4), c);
        assert!(c.shift(2).occupied(-2));
        let r = ParticleConfiguration::ring(6, vec![0, 1]).unwrap();
        assert_eq!(r.shift(1).positions(), &[0, 5]);
        assert_eq!(r.shift(3).shift(-3), r);
    }

    #[test]
    fn occupancy_roundtrip() {
        let occ = [true, false, true, true, false];
        let c = ParticleConfiguration::from_occupancy(-2, &occ);
        assert_eq!(c.positions(), &[-2, 0, 1]);
        assert_eq!(c.occupancy(-2, 2), occ.to_vec());
        assert_eq!(c.count_in(-1, 1), 2);
    }
}
