use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::model::Topology;

/// `(sum of tagged displacements, horizontal edge count)` of a trajectory.
///
/// On the line the displacement is `sum_k (p_T(k) - p_0(k))`; on the ring
/// positions wrap, so the per-step displacements are summed instead.
pub fn current_identity(traj: &Trajectory) -> Result<(u64, u64)> {
    let first = &traj.states[0];
    let last = traj.last();
    let displacement = match first.topology() {
        Topology::Ring { .. } => traj.moved.iter().sum(),
        _ => {
            let e = &traj.ensemble;
            let (lo, hi) = (e.x0, e.x0 + e.width as i64 - 1);
            let inside = |p: &[i64]| p.first().is_none_or(|&a| a >= lo) && p.last().is_none_or(|&b| b <= hi);
            if !inside(first.positions()) || !inside(last.positions()) {
                return Err(Error::InfiniteSystem);
            }
            last.positions().iter().zip(first.positions()).map(|(b, a)| (b - a) as u64).sum()
        }
    };
    Ok((displacement, traj.ensemble.horizontal_count()))
}

/// Total current, checked against the horizontal edges of the ensemble.
pub fn total_current(traj: &Trajectory) -> Result<u64> {
    let (d, h) = current_identity(traj)?;
    if d != h {
        return Err(Error::InvalidConfiguration(format!("current identity broken: {d} moves vs {h} edges")));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run_line, run_ring};
    use crate::model::{ModelParams, ParticleConfiguration, Randomness};

    #[test]
    fn identity_on_runs() {
        let p = ModelParams::default();
        for seed in 0..20 {
            let rng = Randomness::new(seed, &p);
            let c = ParticleConfiguration::line(vec![0, 1, 4, 9]).unwrap();
            let t = run_line(&c, &p, &rng, 0, 30, None).unwrap();
            total_current(&t).unwrap();
            let r = ParticleConfiguration::ring(12, vec![0, 1, 4, 9]).unwrap();
            let t = run_ring(&r, &p, &rng, 0, 30).unwrap();
            total_current(&t).unwrap();
        }
    }

    #[test]
    fn no_motion_and_clipped() {
        let p = ModelParams::default();
        let rng = Randomness::new(1, &p);
        let c = ParticleConfiguration::line(vec![]).unwrap();
        assert_eq!(total_current(&run_line(&c, &p, &rng, 0, 5, None).unwrap()).unwrap(), 0);
        let c = ParticleConfiguration::line(vec![0, 3]).unwrap();
        let t = run_line(&c, &p, &rng, 0, 50, Some((0, 2))).unwrap();
        assert_eq!(total_current(&t), Err(Error::InfiniteSystem));
    }
}
