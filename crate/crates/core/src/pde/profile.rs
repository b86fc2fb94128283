use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    /// The real line; the first and last values extend to infinity.
    Line,
    /// The unit torus `[0, 1)`.
    Torus,
}

/// Piecewise-constant density with values in `[0, 1]`.
///
/// `values[i]` holds on `[breakpoints[i-1], breakpoints[i])`, with the
/// outer pieces running to `-inf`/`+inf` on the line and to `0`/`1` on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    domain: Domain,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    cum: Vec<f64>,
}

impl DensityProfile {
    pub fn new(domain: Domain, breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidConfiguration("need one more value than breakpoints".into()));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfiguration("breakpoints must be finite and increasing".into()));
        }
        if domain == Domain::Torus && breakpoints.iter().any(|&b| b <= 0.0 || b >= 1.0) {
            return Err(Error::InvalidConfiguration("torus breakpoints must lie in (0, 1)".into()));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::RangeViolation("profile values must lie in [0, 1]".into()));
        }
        let mut p = DensityProfile { domain, breakpoints, values, cum: Vec::new() };
        p.cum = p.cumulative_table();
        Ok(p)
    }

    pub fn line(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Line, breakpoints, values)
    }

    pub fn torus(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Torus, breakpoints, values)
    }

    pub fn constant(domain: Domain, v: f64) -> Result<Self> {
        Self::new(domain, Vec::new(), vec![v])
    }

    /// `theta` left of `at`, `rho` right of it.
    pub fn step(theta: f64, rho: f64, at: f64) -> Result<Self> {
        Self::line(vec![at], vec![theta, rho])
    }

    /// Cells `[x0 + i dx, x0 + (i+1) dx)` on the line, with constant tails.
    pub fn from_cells(x0: f64, dx: f64, cells: &[f64], left: f64, right: f64) -> Result<Self> {
        let bps = (0..=cells.len()).map(|i| x0 + i as f64 * dx).collect();
        let mut values = Vec::with_capacity(cells.len() + 2);
        values.push(left);
        values.extend_from_slice(cells);
        values.push(right);
        Self::line(bps, values)
    }

    /// `m` equal cells on the torus.
    pub fn from_torus_cells(cells: &[f64]) -> Result<Self> {
        let m = cells.len();
        Self::torus((1..m).map(|i| i as f64 / m as f64).collect(), cells.to_vec())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_tail(&self) -> f64 {
        self.values[0]
    }

    pub fn right_tail(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn has_compact_support(&self) -> bool {
        self.domain == Domain::Torus || (self.left_tail() == 0.0 && self.right_tail() == 0.0)
    }

    fn origin(&self) -> f64 {
        match self.domain {
            Domain::Line => self.breakpoints.first().copied().unwrap_or(0.0),
            Domain::Torus => 0.0,
        }
    }

    /// `cum[i]` is the integral from the origin to `breakpoints[i]`.
    fn cumulative_table(&self) -> Vec<f64> {
        let mut cum = Vec::with_capacity(self.breakpoints.len());
        let mut acc = 0.0;
        let mut prev = self.origin();
        for (i, &b) in self.breakpoints.iter().enumerate() {
            acc += self.values[i] * (b - prev);
            cum.push(acc);
            prev = b;
        }
        cum
    }

    pub fn value(&self, x: f64) -> f64 {
        let x = match self.domain {
            Domain::Line => x,
            Domain::Torus => x.rem_euclid(1.0),
        };
        self.values[self.breakpoints.partition_point(|&b| b <= x)]
    }

    /// Total mass of one period (torus only meaningful).
    pub fn mass(&self) -> f64 {
        self.primitive_base(1.0)
    }

    fn primitive_base(&self, x: f64) -> f64 {
        let j = self.breakpoints.partition_point(|&b| b <= x);
        if j == 0 {
            self.values[0] * (x - self.origin())
        } else {
            self.cum[j - 1] + self.values[j] * (x - self.breakpoints[j - 1])
        }
    }

    /// An antiderivative, exact; on the torus it grows by the mass each period.
    pub fn primitive(&self, x: f64) -> f64 {
        match self.domain {
            Domain::Line => self.primitive_base(x),
            Domain::Torus => {
                let n = x.floor();
                n * self.mass() + self.primitive_base(x - n)
            }
        }
    }

    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.primitive(b) - self.primitive(a)
    }

    /// Exact averages over `m` cells of width `dx` starting at `x0`.
    pub fn cell_averages(&self, x0: f64, dx: f64, m: usize) -> Vec<f64> {
        let mut prev = self.primitive(x0);
        (0..m)
            .map(|i| {
                let next = self.primitive(x0 + (i + 1) as f64 * dx);
                let avg = (next - prev) / dx;
                prev = next;
                avg.clamp(0.0, 1.0)
            })
            .collect()
    }

    pub fn total_variation(&self) -> f64 {
        let mut tv: f64 = self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        if self.domain == Domain::Torus {
            tv += (self.values[0] - self.right_tail()).abs();
        }
        tv
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
