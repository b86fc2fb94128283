use crate::error::{Error, Result};
use crate::model::{ParticleConfiguration, SiteCoins, Topology};

/// One left-to-right update of ordered positions.
///
/// Particle `k` at `x` stays if its coin says so and particle `k-1` did not
/// land on `x`; otherwise it moves to `min(x + jump(x), p(k+1))`.
pub fn step_positions<C: SiteCoins + ?Sized>(p: &[i64], coins: &C, class: usize) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::with_capacity(p.len());
    for (k, &x) in p.iter().enumerate() {
        let forced = out.last() == Some(&x);
        if !forced && coins.chi(x, class)? {
            out.push(x);
            continue;
        }
        let target = x.saturating_add(coins.jump(x, class)? as i64);
        out.push(match p.get(k + 1) {
            Some(&cap) => target.min(cap),
            None => target,
        });
    }
    Ok(out)
}

pub fn step_line<C: SiteCoins + ?Sized>(config: &ParticleConfiguration, rnd: &C) -> Result<ParticleConfiguration> {
    match config.topology() {
        Topology::Ring { .. } => Err(Error::InvalidConfiguration("step_line needs a line configuration".into())),
        _ => ParticleConfiguration::line(step_positions(config.positions(), rnd, 1)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StepRandomness;

    #[test]
    fn lone_particle_stays() {
        let rnd = StepRandomness::from_tables(0, vec![true], vec![4]).unwrap();
        let c = ParticleConfiguration::line(vec![0]).unwrap();
        assert_eq!(step_line(&c, &rnd).unwrap().positions(), &[0]);
    }

    #[test]
    fn blocked_then_forced() {
        // chi(0)=0, jump(0)=5: particle 0 is capped at 2, which forces particle 1 out.
        let rnd = StepRandomness::from_tables(0, vec![false, true, true, true, true, true], vec![5, 1, 3, 1, 1, 1])
            .unwrap();
        let c = ParticleConfiguration::line(vec![0, 2]).unwrap();
        assert_eq!(step_line(&c, &rnd).unwrap().positions(), &[2, 5]);
    }

    #[test]
    fn gap_reported() {
        let rnd = StepRandomness::from_tables(0, vec![false], vec![1]).unwrap();
        let c = ParticleConfiguration::line(vec![0, 3]).unwrap();
        assert_eq!(step_line(&c, &rnd), Err(Error::RandomnessGap { site: 3, class: 1 }));
    }

    #[test]
    fn ring_rejected() {
        let rnd = StepRandomness::from_tables(0, vec![false], vec![1]).unwrap();
        let c = ParticleConfiguration::ring(3, vec![0]).unwrap();
        assert!(step_line(&c, &rnd).is_err());
    }
}
