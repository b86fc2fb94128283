use serde::{Deserialize, Serialize};

use crate::ModelParams;

/// Edge indicators on a rectangle of vertices `[x0, x0+width) x [y0, y0+height)`.
///
/// `vertical(x, y)` is the edge `(x,y) -> (x,y+1)` for `y0-1 <= y < y0+height`;
/// `horizontal(x, y)` is the edge `(x,y) -> (x+1,y)` for `x0-1 <= x < x0+width`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexEnsemble {
    pub x0: i64,
    pub y0: i64,
    pub width: usize,
    pub height: usize,
    /// Leftmost incoming and rightmost outgoing horizontal edges are identified.
    pub periodic: bool,
    vertical: Vec<u8>,
    horizontal: Vec<u8>,
}

impl VertexEnsemble {
    pub fn empty(x0: i64, y0: i64, width: usize, height: usize, periodic: bool) -> Self {
        VertexEnsemble {
            x0,
            y0,
            width,
            height,
            periodic,
            vertical: vec![0; (height + 1) * width],
            horizontal: vec![0; height * (width + 1)],
        }
    }

    #[inline]
    fn vidx(&self, x: i64, y: i64) -> usize {
        let c = x - self.x0;
        let r = y - (self.y0 - 1);
        debug_assert!(c >= 0 && (c as usize) < self.width && r >= 0 && (r as usize) <= self.height);
        r as usize * self.width + c as usize
    }

    #[inline]
    fn hidx(&self, x: i64, y: i64) -> usize {
        let c = x - (self.x0 - 1);
        let r = y - self.y0;
        debug_assert!(c >= 0 && (c as usize) <= self.width && r >= 0 && (r as usize) < self.height);
        r as usize * (self.width + 1) + c as usize
    }

    pub fn vertical(&self, x: i64, y: i64) -> u8 {
        self.vertical[self.vidx(x, y)]
    }

    pub fn horizontal(&self, x: i64, y: i64) -> u8 {
        self.horizontal[self.hidx(x, y)]
    }

    pub fn set_vertical(&mut self, x: i64, y: i64, v: u8) {
        let i = self.vidx(x, y);
        self.vertical[i] = v;
    }

    pub fn set_horizontal(&mut self, x: i64, y: i64, v: u8) {
        let i = self.hidx(x, y);
        self.horizontal[i] = v;
    }

    pub fn horizontal_count(&self) -> u64 {
        // On a periodic strip the seam edge is stored twice.
        let skip = usize::from(self.periodic);
        self.horizontal
            .chunks(self.width + 1)
            .map(|row| row[skip..].iter().map(|&h| h as u64).sum::<u64>())
            .sum()
    }

    /// Vertex `(i1, j1; i2, j2)` at `(x, y)`.
    pub fn vertex(&self, x: i64, y: i64) -> (u8, u8, u8, u8) {
        (self.vertical(x, y - 1), self.horizontal(x - 1, y), self.vertical(x, y), self.horizontal(x, y))
    }

    /// Product of stochastic vertex weights; zero if any vertex is illegal.
    pub fn weight(&self, p: &ModelParams) -> f64 {
        let mut w = 1.0;
        for y in self.y0..self.y0 + self.height as i64 {
            for x in self.x0..self.x0 + self.width as i64 {
                w *= vertex_weight(self.vertex(x, y), p.b1, p.b2);
            }
        }
        w
    }

    /// Canonical bit packing: verticals row-major (bottom first), then horizontals row-major.
    pub fn pack(&self) -> u64 {
        assert!(self.vertical.len() + self.horizontal.len() <= 64, "window too large to pack");
        self.vertical
            .iter()
            .chain(&self.horizontal)
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64 & 1) << i))
    }

    /// Non-periodic copy of the vertices `[x, x+w) x [y, y+h)`.
    pub fn sub_window(&self, x: i64, y: i64, w: usize, h: usize) -> VertexEnsemble {
        let mut out = VertexEnsemble::empty(x, y, w, h, false);
        let wrap = |a: i64| if self.periodic { self.x0 + (a - self.x0).rem_euclid(self.width as i64) } else { a };
        for yy in y - 1..y + h as i64 {
            for xx in x..x + w as i64 {
                out.set_vertical(xx, yy, self.vertical(wrap(xx), yy));
            }
        }
        for yy in y..y + h as i64 {
            for xx in x - 1..x + w as i64 {
                out.set_horizontal(xx, yy, self.horizontal(wrap(xx), yy));
            }
        }
        out
    }
}

/// Stochastic weight of `(i1, j1; i2, j2)`.
pub fn vertex_weight((i1, j1, i2, j2): (u8, u8, u8, u8), b1: f64, b2: f64) -> f64 {
    match (i1, j1, i2, j2) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => 1.0,
        (1, 0, 1, 0) => b1,
        (1, 0, 0, 1) => 1.0 - b1,
        (0, 1, 0, 1) => b2,
        (0, 1, 1, 0) => 1.0 - b2,
        _ => 0.0,
    }
}

/// Arrow conservation and 0/1 entries at every vertex, plus seam agreement when periodic.
pub fn validate_ensemble(e: &VertexEnsemble) -> bool {
    if e.vertical.iter().chain(&e.horizontal).any(|&b| b > 1) {
        return false;
    }
    for y in e.y0..e.y0 + e.height as i64 {
        if e.periodic && e.width > 0 && e.horizontal(e.x0 - 1, y) != e.horizontal(e.x0 + e.width as i64 - 1, y) {
            return false;
        }
        for x in e.x0..e.x0 + e.width as i64 {
            let (i1, j1, i2, j2) = e.vertex(x, y);
            if i1 + j1 != i2 + j2 {
                return false;
            }
        }
    }
    true
}
