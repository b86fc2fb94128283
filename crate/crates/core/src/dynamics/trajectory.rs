use crate::error::{Error, Result};
use crate::model::{KeyedStep, ModelParams, ParticleConfiguration, Randomness, Topology, VertexEnsemble};

use super::line::step_positions;
use super::ring::step_ring;

/// States at times `t0, t0+1, ...` and the edge ensemble of the rows between them.
///
/// Ensemble row `y` (for `y = 1..=steps`) sits between `states[y-1]` and
/// `states[y]`; `vertical(x, y)` is the occupancy of `states[y]`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: ModelParams,
    pub states: Vec<ParticleConfiguration>,
    pub ensemble: VertexEnsemble,
    /// Total tagged displacement of each step.
    pub moved: Vec<u64>,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn last(&self) -> &ParticleConfiguration {
        self.states.last().expect("trajectory has an initial state")
    }
}

fn mark_moves(e: &mut VertexEnsemble, y: i64, from: &[i64], to: &[i64]) {
    let lo = e.x0 - 1;
    let hi = e.x0 + e.width as i64 - 1;
    for (&a, &b) in from.iter().zip(to) {
        for x in a.max(lo)..b.min(hi + 1) {
            e.set_horizontal(x, y, 1);
        }
    }
}

/// Run the line dynamics for `steps` rows starting at time `t0 + 1`.
///
/// The ensemble covers `window` when given, otherwise every column any particle visits.
pub fn run_line(
    initial: &ParticleConfiguration,
    params: &ModelParams,
    rng: &Randomness,
    t0: i64,
    steps: usize,
    window: Option<(i64, i64)>,
) -> Result<Trajectory> {
    if let Topology::Ring { .. } = initial.topology() {
        return Err(Error::InvalidConfiguration("run_line needs a line configuration".into()));
    }
    let mut states = vec![initial.clone()];
    let mut moved = Vec::with_capacity(steps);
    for s in 1..=steps as i64 {
        let prev = states.last().unwrap();
        let next = step_positions(prev.positions(), &KeyedStep { rng, t: t0 + s }, 1)?;
        moved.push(next.iter().zip(prev.positions()).map(|(b, a)| (b - a) as u64).sum());
        states.push(ParticleConfiguration::line(next)?);
    }
    let (lo, hi) = window.unwrap_or_else(|| {
        let lo = initial.positions().first().copied().unwrap_or(0);
        let hi = states.last().unwrap().positions().last().copied().unwrap_or(lo);
        (lo, hi)
    });
    let width = (hi - lo + 1).max(0) as usize;
    let mut ensemble = VertexEnsemble::empty(lo, 1, width, steps, false);
    for (y, st) in states.iter().enumerate() {
        for &x in st.positions() {
            if x >= lo && x <= hi {
                ensemble.set_vertical(x, y as i64, 1);
            }
        }
    }
    for y in 1..=steps {
        mark_moves(&mut ensemble, y as i64, states[y - 1].positions(), states[y].positions());
    }
    Ok(Trajectory { params: *params, states, ensemble, moved })
}

/// Run the cylinder dynamics for `steps` rows starting at time `t0 + 1`.
pub fn run_ring(
    initial: &ParticleConfiguration,
    params: &ModelParams,
    rng: &Randomness,
    t0: i64,
    steps: usize,
) -> Result<Trajectory> {
    let n = match initial.topology() {
        Topology::Ring { n } => n,
        _ => return Err(Error::InvalidConfiguration("run_ring needs a ring configuration".into())),
    };
    let mut ensemble = VertexEnsemble::empty(0, 1, n as usize, steps, true);
    for &x in initial.positions() {
        ensemble.set_vertical(x, 0, 1);
    }
    let mut states = vec![initial.clone()];
    let mut moved = Vec::with_capacity(steps);
    for s in 1..=steps as i64 {
        let step = step_ring(states.last().unwrap(), rng, t0 + s)?;
        for (x, &h) in step.horizontal.iter().enumerate() {
            ensemble.set_horizontal(x as i64, s, h);
        }
        ensemble.set_horizontal(-1, s, step.horizontal[n as usize - 1]);
        for &x in step.next.positions() {
            ensemble.set_vertical(x, s, 1);
        }
        moved.push(step.displacement.iter().sum());
        states.push(step.next);
    }
    Ok(Trajectory { params: *params, states, ensemble, moved })
}
