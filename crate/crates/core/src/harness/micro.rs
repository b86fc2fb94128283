//! One-step samplers against enumerated laws on small boxes.

use std::collections::BTreeMap;

use super::{ExperimentConfig, Recorder};
use crate::dynamics::{step_positions, step_ring};
use crate::error::Result;
use crate::multiclass::{step_multiclass, MultiClassConfiguration};
use crate::oracle::{line_position_law, line_row_law, max_z, ring_row_law};
use crate::ParticleConfiguration;

const LINE_BOXES: [&str; 5] = ["101100", "111000", "010010", "100001", "110000"];
const RING_BOXES: [&str; 4] = ["10", "11000", "101001", "010000"];
const TWO_CLASS_BOXES: [&str; 3] = ["1200", "21000", "201020"];

fn bits(s: &str) -> Vec<bool> {
    s.bytes().map(|b| b == b'1').collect()
}

fn sites(occ: &[bool]) -> Vec<i64> {
    occ.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as i64).collect()
}

/// Default threshold `z = 4` standard errors per outcome.
pub(super) fn micro_oracle(cfg: &ExperimentConfig, rec: &mut Recorder) -> Result<()> {
    let p = cfg.params;
    let reps = cfg.replicas as u64;
    let zmax = cfg.tol("z", 4.0);
    let rng = cfg.replica_rng(0);

    for b in LINE_BOXES {
        let occ = bits(b);
        let len = occ.len() as i64;
        let law = line_position_law(0, &occ, p.b1, p.b2);
        let start = sites(&occ);
        let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for t in 0..reps as i64 {
            let mut next = step_positions(&start, &rng.at(t), 1)?;
            for x in &mut next {
                *x = (*x).min(len);
            }
            *counts.entry(next).or_default() += 1;
        }
        let z = max_z(&law, &counts, reps);
        rec.push(occ.len(), &format!("line_{b}_max_z"), z, 0.0, 1.0, z <= zmax);
    }

    for b in RING_BOXES {
        let occ = bits(b);
        let law = ring_row_law(&occ, p.b1, p.b2);
        let config = ParticleConfiguration::ring(occ.len() as i64, sites(&occ))?;
        let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        for t in 0..reps as i64 {
            *counts.entry(step_ring(&config, &rng, t)?.horizontal).or_default() += 1;
        }
        let z = max_z(&law, &counts, reps);
        rec.push(occ.len(), &format!("ring_{b}_max_z"), z, 0.0, 1.0, z <= zmax);
    }

    for b in TWO_CLASS_BOXES {
        let labels: Vec<u8> = b.bytes().map(|c| c - b'0').collect();
        let hi = labels.len() as i64 - 1;
        let law = line_row_law(&labels, p.b1, p.b2);
        let config = MultiClassConfiguration::from_labels(0, &labels, 2)?;
        let mut counts: BTreeMap<(Vec<u8>, u8), u64> = BTreeMap::new();
        for t in 0..reps as i64 {
            let out = step_multiclass(&config, &rng.at(t))?;
            let exit = (1..=2).find(|&r| out.class(r).iter().any(|&x| x > hi)).unwrap_or(0) as u8;
            *counts.entry((out.labels(0, hi), exit)).or_default() += 1;
        }
        let z = max_z(&law, &counts, reps);
        rec.push(labels.len(), &format!("two_class_{b}_max_z"), z, 0.0, 1.0, z <= zmax);
    }
    Ok(())
}
