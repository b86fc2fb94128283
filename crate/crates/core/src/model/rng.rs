//! Keyed, counter-based randomness.
//!
//! Every variate is a pure function of `(seed, stream, t, x, class)`, so
//! several coupled systems can read the same site coins without sharing
//! generator state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const K_STREAM: u64 = 0xd1b5_4a32_d192_ed03;
const K_T: u64 = 0xaef1_7502_108e_f2d9;
const K_X: u64 = 0xdb4f_0b91_75ae_2165;
const K_CLASS: u64 = 0x8cb9_2ba7_2f3d_8dd7;

#[inline]
fn mix(z: u64) -> u64 {
    let mut z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent families of variates drawn from one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Stream {
    Chi = 1,
    Jump = 2,
    Seam = 3,
    Row = 4,
    Init = 5,
    Aux = 6,
    Coupling = 7,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Randomness {
    pub seed: u64,
    pub b1: f64,
    pub b2: f64,
    #[serde(skip)]
    ln_b2: f64,
}

impl Randomness {
    pub fn new(seed: u64, params: &crate::ModelParams) -> Self {
        Randomness { seed, b1: params.b1, b2: params.b2, ln_b2: params.b2.ln() }
    }

    /// Same coin biases, different seed.
    pub fn reseed(&self, seed: u64) -> Self {
        Randomness { seed, ..*self }
    }

    #[inline]
    pub fn bits(&self, stream: Stream, t: i64, x: i64, class: usize) -> u64 {
        let mut h = mix(self.seed ^ (stream as u64).wrapping_mul(K_STREAM));
        h = mix(h ^ (t as u64).wrapping_mul(K_T));
        h = mix(h ^ (x as u64).wrapping_mul(K_X));
        mix(h ^ (class as u64).wrapping_mul(K_CLASS))
    }

    /// Uniform on the open interval (0, 1).
    #[inline]
    pub fn uniform(&self, stream: Stream, t: i64, x: i64, class: usize) -> f64 {
        let b = self.bits(stream, t, x, class) >> 11;
        (b as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Stay coin: true with probability b1.
    #[inline]
    pub fn chi(&self, t: i64, x: i64, class: usize) -> bool {
        self.uniform(Stream::Chi, t, x, class) < self.b1
    }

    /// b2-geometric jump on {1, 2, ...} by inverse CDF.
    #[inline]
    pub fn jump(&self, t: i64, x: i64, class: usize) -> u64 {
        let u = self.uniform(Stream::Jump, t, x, class);
        geometric_from_uniform(u, self.ln_b2)
    }

    #[inline]
    pub fn bernoulli(&self, stream: Stream, t: i64, x: i64, class: usize, p: f64) -> bool {
        self.uniform(stream, t, x, class) < p
    }

    /// Coins for a single time step, evaluated lazily.
    pub fn at(&self, t: i64) -> KeyedStep<'_> {
        KeyedStep { rng: self, t }
    }
}

#[inline]
pub fn geometric_from_uniform(u: f64, ln_b2: f64) -> u64 {
    1 + (u.ln() / ln_b2).floor() as u64
}

/// Single-class coins addressed by time and site.
pub trait SpaceTimeCoins {
    fn chi_at(&self, t: i64, x: i64) -> bool;
    fn jump_at(&self, t: i64, x: i64) -> u64;
    fn b2(&self) -> f64;
}

impl SpaceTimeCoins for Randomness {
    #[inline]
    fn chi_at(&self, t: i64, x: i64) -> bool {
        self.chi(t, x, 1)
    }
    #[inline]
    fn jump_at(&self, t: i64, x: i64) -> u64 {
        self.jump(t, x, 1)
    }
    fn b2(&self) -> f64 {
        self.b2
    }
}

/// Site-indexed coins consumed by the one-step samplers.
pub trait SiteCoins {
    fn chi(&self, x: i64, class: usize) -> Result<bool>;
    fn jump(&self, x: i64, class: usize) -> Result<u64>;
}

#[derive(Debug, Clone, Copy)]
pub struct KeyedStep<'a> {
    pub rng: &'a Randomness,
    pub t: i64,
}

impl SiteCoins for KeyedStep<'_> {
    #[inline]
    fn chi(&self, x: i64, class: usize) -> Result<bool> {
        Ok(self.rng.chi(self.t, x, class))
    }
    #[inline]
    fn jump(&self, x: i64, class: usize) -> Result<u64> {
        Ok(self.rng.jump(self.t, x, class))
    }
}

/// Materialized coins on a finite site range, classes `1..=classes`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRandomness {
    pub lo: i64,
    pub chi: Vec<Vec<bool>>,
    pub jump: Vec<Vec<u64>>,
}

impl StepRandomness {
    /// Single-class table starting at site `lo`.
    pub fn from_tables(lo: i64, chi: Vec<bool>, jump: Vec<u64>) -> Result<Self> {
        Self::from_class_tables(lo, vec![chi], vec![jump])
    }

    pub fn from_class_tables(lo: i64, chi: Vec<Vec<bool>>, jump: Vec<Vec<u64>>) -> Result<Self> {
        let len = chi.first().map_or(0, Vec::len);
        let ok = chi.len() == jump.len()
            && chi.iter().all(|c| c.len() == len)
            && jump.iter().all(|j| j.len() == len && j.iter().all(|&v| v >= 1));
        if !ok {
            return Err(Error::InvalidConfiguration("ragged or zero-jump randomness table".into()));
        }
        Ok(StepRandomness { lo, chi, jump })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.chi.first().map_or(0, Vec::len) as i64 - 1
    }

    fn index(&self, x: i64, class: usize) -> Result<(usize, usize)> {
        let gap = Error::RandomnessGap { site: x, class };
        if class == 0 || class > self.chi.len() || x < self.lo || x > self.hi() {
            return Err(gap);
        }
        Ok((class - 1, (x - self.lo) as usize))
    }
}

impl SiteCoins for StepRandomness {
    fn chi(&self, x: i64, class: usize) -> Result<bool> {
        let (c, i) = self.index(x, class)?;
        Ok(self.chi[c][i])
    }
    fn jump(&self, x: i64, class: usize) -> Result<u64> {
        let (c, i) = self.index(x, class)?;
        Ok(self.jump[c][i])
    }
}

/// Tabulate the keyed coins of step `t` on `lo..=hi` for classes `1..=classes`.
pub fn draw_randomness(rng: &Randomness, t: i64, lo: i64, hi: i64, classes: usize) -> StepRandomness {
    let sites: Vec<i64> = if hi >= lo { (lo..=hi).collect() } else { Vec::new() };
    let chi = (1..=classes).map(|r| sites.iter().map(|&x| rng.chi(t, x, r)).collect()).collect();
    let jump = (1..=classes).map(|r| sites.iter().map(|&x| rng.jump(t, x, r)).collect()).collect();
    StepRandomness { lo, chi, jump }
}
