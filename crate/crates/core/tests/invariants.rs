use proptest::prelude::*;

use sixvertex::dynamics::{monotone_step, step_positions, step_ring};
use sixvertex::multiclass::{step_multiclass, MultiClassConfiguration};
use sixvertex::pde::{delta_distance, DensityProfile, FluxModel, Solver};
use sixvertex::{ModelParams, ParticleConfiguration, Randomness};

fn params() -> impl Strategy<Value = ModelParams> {
    (0.05f64..0.9, 0.05f64..0.9)
        .prop_filter("b1 < b2", |(a, b)| a + 0.02 < *b)
        .prop_map(|(b1, b2)| ModelParams { b1, b2, lambda: 1.0 })
}

fn sites(max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(0..max, 0..(max as usize)).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_step_keeps_order_and_caps(p in sites(40), prm in params(), seed in any::<u64>(), t in 0i64..1000) {
        let rng = Randomness::new(seed, &prm);
        let q = step_positions(&p, &rng.at(t), 1).unwrap();
        prop_assert_eq!(q.len(), p.len());
        prop_assert!(q.windows(2).all(|w| w[0] < w[1]));
        for k in 0..p.len() {
            prop_assert!(q[k] >= p[k]);
            if k + 1 < p.len() {
                prop_assert!(q[k] <= p[k + 1]);
            }
        }
    }

    #[test]
    fn ring_step_conserves(p in sites(24), prm in params(), seed in any::<u64>(), t in 0i64..1000) {
        let c = ParticleConfiguration::ring(24, p).unwrap();
        let s = step_ring(&c, &Randomness::new(seed, &prm), t).unwrap();
        prop_assert_eq!(s.next.len(), c.len());
        let moved: u64 = s.displacement.iter().sum();
        prop_assert_eq!(moved, s.horizontal.iter().map(|&h| h as u64).sum::<u64>());
    }

    #[test]
    fn multiclass_step_keeps_class_counts(labels in prop::collection::vec(0u8..4, 1..30), seed in any::<u64>()) {
        let c = MultiClassConfiguration::from_labels(0, &labels, 3).unwrap();
        let rng = Randomness::new(seed, &ModelParams::default());
        let out = step_multiclass(&c, &rng.at(1)).unwrap();
        for r in 1..=3 {
            prop_assert_eq!(out.class(r).len(), c.class(r).len());
        }
        // Sites stay distinct across classes.
        let mut all = out.occupied();
        let n = all.len();
        all.dedup();
        prop_assert_eq!(all.len(), n);
    }

    #[test]
    fn monotone_step_keeps_order(q in sites(30), shifts in prop::collection::vec(any::<bool>(), 30), seed in any::<u64>()) {
        let mut p = q.clone();
        for k in (0..p.len()).rev() {
            let room = p.get(k + 1).is_none_or(|&nx| p[k] + 1 < nx);
            if room && shifts[k] {
                p[k] += 1;
            }
        }
        let rng = Randomness::new(seed, &ModelParams::default());
        let (np, nq) = monotone_step(&p, &q, &rng, 1).unwrap();
        prop_assert!(np.iter().zip(&nq).all(|(a, b)| a >= b));
        prop_assert!(np.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(nq.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn solver_contracts_delta(vals_u in prop::collection::vec(0.0f64..1.0, 3), vals_v in prop::collection::vec(0.0f64..1.0, 3), l in 0.0f64..1.0, r in 0.0f64..1.0) {
        let bps = vec![0.0, 0.25, 0.5, 0.75];
        let mk = |v: &[f64]| DensityProfile::line(bps.clone(), vec![l, v[0], v[1], v[2], r]).unwrap();
        let (u, v) = (mk(&vals_u), mk(&vals_v));
        let solver = Solver::new(FluxModel::new(1.5), 1.0 / 100.0);
        let before = delta_distance(&u, &v).unwrap();
        let after = delta_distance(&solver.evolve_p(&u, 0.2).unwrap(), &solver.evolve_p(&v, 0.2).unwrap()).unwrap();
        prop_assert!(after <= before + 2.0 / 100.0);
    }
}
