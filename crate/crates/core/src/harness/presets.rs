//! Configs behind the ten acceptance criteria.

use super::{ExperimentConfig, ExperimentKind, InitialProfile};

pub const SEED: u64 = 20_261_019;

/// Criterion number and a one-line description.
pub const CRITERIA: [(u32, &str); 10] = [
    (1, "one-step samplers match enumerated laws within 4 sigma"),
    (2, "E3 bulk density, pair product and edge density at rho = 0.4"),
    (3, "E2 shock location ratio and non-increasing error"),
    (4, "E2 rarefaction fan density and edges"),
    (5, "E5 coupling invariants over 1e7 particle-steps"),
    (6, "E6 one-step displacement tail on line and ring"),
    (7, "E7 current identity and stationary current rate"),
    (8, "PDE convergence, entropy residuals and contraction"),
    (9, "E4 window TV distance at a continuity point"),
    (10, "E8 cylinder against line discrepancy frequency"),
];

fn with(mut c: ExperimentConfig, options: &[(&str, f64)]) -> ExperimentConfig {
    for &(k, v) in options {
        c.options.insert(k.to_string(), v);
    }
    c
}

/// Configs whose records together decide criterion `k`; empty for unknown `k`.
pub fn acceptance_configs(k: u32) -> Vec<ExperimentConfig> {
    use ExperimentKind::*;
    use InitialProfile::*;
    let new = |kind, sizes: &[usize], reps, profile| ExperimentConfig::new(kind, sizes.to_vec(), reps, SEED, profile);
    match k {
        1 => vec![new(Oracle, &[6], 100_000, Constant { rho: 0.5 })],
        2 => vec![with(new(E3, &[4000], 100, Constant { rho: 0.4 }), &[("steps", 500.0)])],
        3 => vec![new(E2, &[500, 1000, 2000], 50, DoubleSided { theta: 0.2, rho: 0.8 })],
        4 => vec![new(E2, &[1000], 50, DoubleSided { theta: 0.8, rho: 0.2 })],
        5 => vec![with(new(E5, &[200], 280, Constant { rho: 0.6 }), &[("steps", 200.0)])],
        6 => vec![with(new(E6, &[400], 1, Constant { rho: 0.5 }), &[("samples", 1e5)])],
        7 => [0.2, 0.5, 0.8]
            .into_iter()
            .map(|rho| with(new(E7, &[2000], 40, Constant { rho }), &[("steps", 200.0)]))
            .collect(),
        8 => vec![new(Pde, &[200, 400, 800], 100, Constant { rho: 0.5 })],
        9 => vec![new(E4, &[64, 128, 256], 4000, Sine { mean: 0.5, amplitude: 0.3 })],
        10 => vec![new(E8, &[16, 32, 64], 2000, Constant { rho: 0.5 })],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for (k, _) in CRITERIA {
            let cs = acceptance_configs(k);
            assert!(!cs.is_empty());
            for c in cs {
                c.validate().unwrap();
            }
        }
        assert!(acceptance_configs(11).is_empty());
    }
}
