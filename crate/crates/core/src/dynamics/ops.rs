use crate::error::Result;
use crate::model::{KeyedStep, ParticleConfiguration, Randomness, Topology};

use super::line::step_positions;
use super::ring::step_ring;

/// `(S_m eta)(x) = eta(x + m)`.
pub fn shift_s(config: &ParticleConfiguration, m: i64) -> ParticleConfiguration {
    config.shift(m)
}

/// `t` steps of the dynamics matching the topology, at times `t0+1 ..= t0+t`.
pub fn evolve_m(config: &ParticleConfiguration, t: i64, rng: &Randomness, t0: i64) -> Result<ParticleConfiguration> {
    let mut cur = config.clone();
    for s in 1..=t {
        cur = match cur.topology() {
            Topology::Ring { .. } => step_ring(&cur, rng, t0 + s)?.next,
            Topology::Line => ParticleConfiguration::line(step_positions(cur.positions(), &KeyedStep { rng, t: t0 + s }, 1)?)?,
            Topology::Window { lo, hi } => {
                let next = step_positions(cur.positions(), &KeyedStep { rng, t: t0 + s }, 1)?;
                let hi = hi.max(next.last().copied().unwrap_or(hi));
                ParticleConfiguration::window(lo, hi, next)?
            }
        };
    }
    Ok(cur)
}
