//! Exact row sampler for the cylinder.
//!
//! A row is a closed chain of 2x2 transfer matrices indexed by the incoming
//! and outgoing horizontal edge. The seam edge is drawn from the diagonal of
//! the full product and the remaining edges from suffix products.

use crate::error::{Error, Result};
use crate::model::{ParticleConfiguration, Randomness, Stream, Topology};

type Mat = [[f64; 2]; 2];

const IDENTITY: Mat = [[1.0, 0.0], [0.0, 1.0]];

#[inline]
pub(crate) fn transfer(occupied: bool, b1: f64, b2: f64) -> Mat {
    if occupied {
        [[b1, 1.0 - b1], [0.0, 1.0]]
    } else {
        [[1.0, 0.0], [1.0 - b2, b2]]
    }
}

#[inline]
fn mul(a: &Mat, b: &Mat) -> Mat {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Result of one cylinder row.
#[derive(Debug, Clone, PartialEq)]
pub struct RingStep {
    pub next: ParticleConfiguration,
    /// `horizontal[x]` is the edge `x -> x+1 (mod n)`.
    pub horizontal: Vec<u8>,
    /// Distance travelled by each particle, indexed like the input positions.
    pub displacement: Vec<u64>,
    pub seam: u8,
}

pub fn step_ring(config: &ParticleConfiguration, rng: &Randomness, t: i64) -> Result<RingStep> {
    let n = match config.topology() {
        Topology::Ring { n } => n,
        _ => return Err(Error::InvalidConfiguration("step_ring needs a ring configuration".into())),
    };
    let size = n as usize;
    if config.is_empty() {
        // The only competing row is a closed loop of horizontal arrows, which carries no particle.
        return Ok(RingStep { next: config.clone(), horizontal: vec![0; size], displacement: Vec::new(), seam: 0 });
    }
    let mut occ = vec![false; size];
    for &x in config.positions() {
        occ[x as usize] = true;
    }
    let mats: Vec<Mat> = occ.iter().map(|&o| transfer(o, rng.b1, rng.b2)).collect();
    let mut suffix = vec![IDENTITY; size + 1];
    for x in (0..size).rev() {
        suffix[x] = mul(&mats[x], &suffix[x + 1]);
    }
    let (w0, w1) = (suffix[0][0][0], suffix[0][1][1]);
    if !(w0 + w1 > 0.0) {
        return Err(Error::DegenerateRow);
    }
    let seam = u8::from(rng.uniform(Stream::Seam, t, 0, 0) >= w0 / (w0 + w1));
    let h0 = seam as usize;

    let mut horizontal = vec![0u8; size];
    let mut arrive = vec![false; size];
    let mut h_in = h0;
    for x in 0..size {
        let a = mats[x][h_in][0] * suffix[x + 1][0][h0];
        let b = mats[x][h_in][1] * suffix[x + 1][1][h0];
        let h_out = usize::from(rng.uniform(Stream::Row, t, x as i64, 0) >= a / (a + b));
        horizontal[x] = h_out as u8;
        arrive[x] = usize::from(occ[x]) + h_in == h_out + 1;
        h_in = h_out;
    }
    debug_assert_eq!(h_in, h0);

    let displacement = config
        .positions()
        .iter()
        .map(|&x| {
            if horizontal[x as usize] == 0 {
                return 0;
            }
            let mut d = 1u64;
            while !arrive[(x as usize + d as usize) % size] {
                d += 1;
            }
            d
        })
        .collect();
    let next_pos = (0..n).filter(|&x| arrive[x as usize]).collect();
    Ok(RingStep { next: ParticleConfiguration::ring(n, next_pos)?, horizontal, displacement, seam })
}

/// Line row sampler driven by the same row uniforms as [`step_ring`], without the seam conditioning.
///
/// Same law as the particle update on Z; used to couple a ring with a line under matched uniforms.
pub fn step_line_transfer(positions: &[i64], rng: &Randomness, t: i64, key_mod: Option<i64>) -> (Vec<i64>, Vec<(i64, i64)>) {
    let Some(&first) = positions.first() else {
        return (Vec::new(), Vec::new());
    };
    let key = |x: i64| key_mod.map_or(x, |n| x.rem_euclid(n));
    let mut out = Vec::with_capacity(positions.len());
    let mut moves = Vec::new();
    let mut idx = 0;
    let mut h_in = 0usize;
    let mut x = first;
    let mut origin = first;
    while idx < positions.len() || h_in == 1 {
        let occupied = positions.get(idx) == Some(&x);
        if occupied {
            idx += 1;
        }
        let m = transfer(occupied, rng.b1, rng.b2);
        let h_out = usize::from(rng.uniform(Stream::Row, t, key(x), 0) >= m[h_in][0]);
        if usize::from(occupied) + h_in == h_out + 1 {
            out.push(x);
            if h_in == 1 {
                moves.push((origin, x));
            }
        }
        if h_out == 1 && occupied {
            origin = x;
        }
        h_in = h_out;
        x += 1;
        if h_in == 0 && idx < positions.len() {
            x = x.max(positions[idx]);
        }
    }
    (out, moves)
}
