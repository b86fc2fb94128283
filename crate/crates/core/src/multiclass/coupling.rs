use crate::error::{Error, Result};
use crate::model::{Randomness, ParticleConfiguration};

use super::config::MultiClassConfiguration;
use super::step::step_multiclass;

/// Models coupled through shared class-keyed randomness.
///
/// `etas` is either empty or an ordered chain of the same length as the
/// ordered chain `xis`; an empty `etas` stands for empty configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledSystem {
    pub etas: Vec<Vec<i64>>,
    pub xis: Vec<Vec<i64>>,
}

/// Violations observed over one coupled step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepAudit {
    /// Particles tracked through the step whose class went up.
    pub class_increases: u64,
    /// Pairs of particles sharing a site before the step but not after it.
    pub decouplings: u64,
    /// Adjacent chain members that are no longer ordered.
    pub order_violations: u64,
    /// Particle moves processed, summed over models.
    pub particle_steps: u64,
}

impl std::ops::AddAssign for StepAudit {
    fn add_assign(&mut self, o: Self) {
        self.class_increases += o.class_increases;
        self.decouplings += o.decouplings;
        self.order_violations += o.order_violations;
        self.particle_steps += o.particle_steps;
    }
}

impl StepAudit {
    pub fn clean(&self) -> bool {
        self.class_increases == 0 && self.decouplings == 0 && self.order_violations == 0
    }
}

fn contains(p: &[i64], x: i64) -> bool {
    p.binary_search(&x).is_ok()
}

fn subset(a: &[i64], b: &[i64]) -> bool {
    a.iter().all(|&x| contains(b, x))
}

fn chain_ordered(chain: &[Vec<i64>]) -> Option<usize> {
    chain.windows(2).position(|w| !subset(&w[0], &w[1]))
}

impl CoupledSystem {
    pub fn new(etas: Vec<Vec<i64>>, xis: Vec<Vec<i64>>) -> Result<Self> {
        if xis.is_empty() || !(etas.is_empty() || etas.len() == xis.len()) {
            return Err(Error::InvalidConfiguration("need n xi models and 0 or n eta models".into()));
        }
        for p in etas.iter().chain(&xis) {
            if p.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidConfiguration("positions not increasing".into()));
            }
        }
        if let Some(i) = chain_ordered(&etas).or_else(|| chain_ordered(&xis)) {
            return Err(Error::OrderViolation { index: i });
        }
        Ok(CoupledSystem { etas, xis })
    }

    /// A single pair, so coupled particles are class 1 and discrepancies class 2.
    pub fn pair(eta: Vec<i64>, xi: Vec<i64>) -> Result<Self> {
        Self::new(vec![eta], vec![xi])
    }

    pub fn n(&self) -> usize {
        self.xis.len()
    }

    /// Class of site `x` in the joint labelling, if some model holds it.
    pub fn label(&self, x: i64) -> Option<usize> {
        let n = self.n();
        let i = self.etas.iter().position(|p| contains(p, x)).unwrap_or(n) + 1;
        let j = self.xis.iter().position(|p| contains(p, x)).unwrap_or(n) + 1;
        (i + j - 1 < 2 * n + 1).then_some(i + j - 1)
    }

    fn models(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.etas.iter().chain(&self.xis)
    }

    /// Each model with every particle carrying its joint label.
    pub fn labelled(&self) -> Vec<MultiClassConfiguration> {
        let classes = 2 * self.n();
        self.models()
            .map(|p| {
                let mut by_class = vec![Vec::new(); classes];
                for &x in p {
                    by_class[self.label(x).expect("held site has a label") - 1].push(x);
                }
                MultiClassConfiguration::new(by_class).expect("labels partition a model")
            })
            .collect()
    }

    /// Number of sites where the first eta and xi models differ.
    pub fn discrepancies(&self) -> usize {
        let (Some(a), Some(b)) = (self.etas.first(), self.xis.first()) else {
            return 0;
        };
        a.iter().filter(|&&x| !contains(b, x)).count() + b.iter().filter(|&&x| !contains(a, x)).count()
    }
}

/// Labels as assigned to `eta` and the ordered chain `xis`.
pub fn assign_classes(eta: &ParticleConfiguration, xis: &[ParticleConfiguration]) -> Result<MultiClassConfiguration> {
    let sys = CoupledSystem::new(
        vec![eta.positions().to_vec(); xis.len()],
        xis.iter().map(|c| c.positions().to_vec()).collect(),
    )?;
    let mut sites: Vec<i64> = sys.models().flatten().copied().collect();
    sites.sort_unstable();
    sites.dedup();
    let mut by_class = vec![Vec::new(); 2 * sys.n()];
    for x in sites {
        by_class[sys.label(x).expect("held site") - 1].push(x);
    }
    MultiClassConfiguration::new(by_class)
}

/// One step of the coupling: relabel, step every model with the same keyed
/// randomness, and forget the classes again.
pub fn higher_rank_step(sys: &CoupledSystem, rng: &Randomness, t: i64) -> Result<(CoupledSystem, StepAudit)> {
    let labelled = sys.labelled();
    let coins = rng.at(t);
    let stepped: Vec<MultiClassConfiguration> =
        labelled.iter().map(|c| step_multiclass(c, &coins)).collect::<Result<_>>()?;
    let ne = sys.etas.len();
    let positions: Vec<Vec<i64>> = stepped.iter().map(MultiClassConfiguration::occupied).collect();
    let next = CoupledSystem { etas: positions[..ne].to_vec(), xis: positions[ne..].to_vec() };

    let mut audit = StepAudit { particle_steps: labelled.iter().map(|c| c.len() as u64).sum(), ..Default::default() };
    // Moves keyed by origin, per model.
    let moves: Vec<Vec<(i64, i64, usize)>> = labelled
        .iter()
        .zip(&stepped)
        .map(|(before, after)| {
            let mut m: Vec<(i64, i64, usize)> = (1..=before.n())
                .flat_map(|r| before.class(r).iter().zip(after.class(r)).map(move |(&x, &y)| (x, y, r)))
                .collect();
            m.sort_unstable();
            m
        })
        .collect();
    for m in &moves {
        for &(_, y, r) in m {
            if next.label(y).is_some_and(|c| c > r) {
                audit.class_increases += 1;
            }
        }
    }
    for a in 0..moves.len() {
        for b in a + 1..moves.len() {
            for &(x, y, _) in &moves[a] {
                if let Ok(i) = moves[b].binary_search_by_key(&x, |m| m.0) {
                    if moves[b][i].1 != y {
                        audit.decouplings += 1;
                    }
                }
            }
        }
    }
    audit.order_violations = [&next.etas, &next.xis]
        .iter()
        .map(|c| c.windows(2).filter(|w| !subset(&w[0], &w[1])).count() as u64)
        .sum();
    Ok((next, audit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::step_positions;
    use crate::model::{ModelParams, StepRandomness, Stream};
    use crate::oracle::{line_position_law, max_z};
    use std::collections::BTreeMap;

    fn line(p: &[i64]) -> ParticleConfiguration {
        ParticleConfiguration::line(p.to_vec()).unwrap()
    }

    #[test]
    fn pair_labels() {
        let c = assign_classes(&line(&[0]), &[line(&[0, 1])]).unwrap();
        assert_eq!(c.labels(0, 1), vec![1, 2]);
        let c = assign_classes(&line(&[0, 4]), &[line(&[0, 4])]).unwrap();
        assert_eq!(c.class(1), &[0, 4]);
        assert!(assign_classes(&line(&[0]), &[line(&[0, 1]), line(&[1])]).is_err());
    }

    #[test]
    fn labels_match_set_differences() {
        // Nested xi chain against a naive table of i + j - 1.
        let eta = [1, 4, 6];
        let xis: [&[i64]; 3] = [&[2, 4], &[2, 3, 4, 6], &[0, 2, 3, 4, 5, 6]];
        let c = assign_classes(&line(&eta), &xis.map(line)).unwrap();
        for x in 0..8 {
            let i = if eta.contains(&x) { 1 } else { 4 };
            let j = xis.iter().position(|p| p.contains(&x)).map_or(4, |m| m + 1);
            let want = if i + j - 1 < 7 { (i + j - 1) as u8 } else { 0 };
            assert_eq!(c.labels(x, x)[0], want, "site {x}");
        }
    }

    #[test]
    fn equal_models_stay_equal() {
        let rng = Randomness::new(5, &ModelParams::default());
        let mut s = CoupledSystem::pair(vec![0, 1, 5, 9], vec![0, 1, 5, 9]).unwrap();
        for t in 1..500 {
            let (n, a) = higher_rank_step(&s, &rng, t).unwrap();
            assert!(a.clean());
            assert_eq!(n.etas[0], n.xis[0]);
            s = n;
        }
    }

    #[test]
    fn discrepancies_never_grow() {
        let p = ModelParams::default();
        for seed in 0..20 {
            let rng = Randomness::new(seed, &p);
            let eta: Vec<i64> = (0..60).filter(|&x| rng.bernoulli(Stream::Init, 0, x, 0, 0.5)).collect();
            let mut xi = eta.clone();
            xi.push(-1);
            xi.sort_unstable();
            let mut s = CoupledSystem::pair(eta, xi).unwrap();
            let mut d = s.discrepancies();
            for t in 1..=1000 {
                let (n, a) = higher_rank_step(&s, &rng, t).unwrap();
                assert!(a.clean(), "seed {seed} t {t}: {a:?}");
                assert!(n.discrepancies() <= d);
                d = n.discrepancies();
                s = n;
            }
        }
    }

    #[test]
    fn eta_marginal_has_line_law() {
        let params = ModelParams::default();
        let occ = [true, false, true, true, false, false];
        let hi = occ.len() as i64 - 1;
        let law = line_position_law(0, &occ, params.b1, params.b2);
        let eta: Vec<i64> = vec![0, 2, 3];
        let xi: Vec<i64> = vec![0, 1, 2, 3];
        let reps = 40_000u64;
        let rng = Randomness::new(17, &params);
        let mut counts = BTreeMap::new();
        for t in 0..reps as i64 {
            let s = CoupledSystem::pair(eta.clone(), xi.clone()).unwrap();
            let (n, _) = higher_rank_step(&s, &rng, t).unwrap();
            let pos: Vec<i64> = n.etas[0].iter().map(|&x| x.min(hi + 1)).collect();
            *counts.entry(pos).or_insert(0u64) += 1;
        }
        assert!(max_z(&law, &counts, reps) < 4.5);
    }

    /// With `eta` copied into both chain slots, the class of a tracked particle can go up.
    #[test]
    fn class_can_increase_with_two_xi_levels() {
        // Sites: xi1 = {0}, xi2 = {0, 1}, eta = {1}. Site 0 has class 3, site 1 class 2.
        let s = CoupledSystem::new(vec![vec![1], vec![1]], vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!((s.label(0), s.label(1)), (Some(3), Some(2)));
        let coins = |jump3: u64| {
            let mut chi = vec![vec![true; 4]; 4];
            chi[2][0] = false;
            let mut jump = vec![vec![1; 4]; 4];
            jump[2][0] = jump3;
            StepRandomness::from_class_tables(0, chi, jump).unwrap()
        };
        let step = |c: &StepRandomness| -> Vec<Vec<i64>> {
            s.labelled().iter().map(|m| step_multiclass(m, c).unwrap().occupied()).collect()
        };
        // Jump 1: in xi2 the class 3 particle skips the stationary class 2 one and lands at 2,
        // which is in xi2 but not xi1 and not eta, so it is relabelled 3 + 2 - 1 = 4.
        let out = step(&coins(1));
        assert_eq!(out[3], vec![1, 2]);
        assert_eq!(out[2], vec![1]);
        let next = CoupledSystem { etas: out[..2].to_vec(), xis: out[2..].to_vec() };
        assert_eq!(next.label(2), Some(4));
        // Jump 2: xi1 lands at 2 while xi2 lands at 3, so xi1 <= xi2 fails.
        let out = step(&coins(2));
        assert_eq!((out[2].clone(), out[3].clone()), (vec![2], vec![1, 3]));
    }

    #[test]
    fn pair_step_reduces_to_line_for_class_one() {
        let rng = Randomness::new(2, &ModelParams::default());
        let p = vec![0, 3, 4, 10];
        let s = CoupledSystem::pair(p.clone(), p.clone()).unwrap();
        let (n, _) = higher_rank_step(&s, &rng, 9).unwrap();
        assert_eq!(n.etas[0], step_positions(&p, &rng.at(9), 1).unwrap());
    }
}
