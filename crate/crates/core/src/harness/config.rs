use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{make_params, ModelParams, Randomness, Stream};
use crate::pde::{DensityProfile, Domain};

/// Which experiment a config runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    /// Samplers against enumerated one-step laws.
    Oracle,
    /// Finite-volume solver against closed forms.
    Pde,
}

impl ExperimentKind {
    pub fn id(self) -> &'static str {
        match self {
            ExperimentKind::E1 => "e1",
            ExperimentKind::E2 => "e2",
            ExperimentKind::E3 => "e3",
            ExperimentKind::E4 => "e4",
            ExperimentKind::E5 => "e5",
            ExperimentKind::E6 => "e6",
            ExperimentKind::E7 => "e7",
            ExperimentKind::E8 => "e8",
            ExperimentKind::Oracle => "oracle",
            ExperimentKind::Pde => "pde",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k = match s.to_ascii_lowercase().as_str() {
            "e1" => ExperimentKind::E1,
            "e2" => ExperimentKind::E2,
            "e3" => ExperimentKind::E3,
            "e4" => ExperimentKind::E4,
            "e5" => ExperimentKind::E5,
            "e6" => ExperimentKind::E6,
            "e7" => ExperimentKind::E7,
            "e8" => ExperimentKind::E8,
            "oracle" => ExperimentKind::Oracle,
            "pde" => ExperimentKind::Pde,
            other => return Err(Error::ConfigInvalid(format!("unknown experiment '{other}'"))),
        };
        Ok(k)
    }
}

/// Initial data, in macroscopic coordinates (site `x` of a size-`N` system sits at `x / N`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialProfile {
    Constant { rho: f64 },
    /// `theta` left of the origin, `rho` right of it.
    DoubleSided { theta: f64, rho: f64 },
    /// `values[i]` on `[breakpoints[i-1], breakpoints[i])`; one more value than breakpoints.
    Piecewise { breakpoints: Vec<f64>, values: Vec<f64> },
    /// Deterministic occupancy, repeated with period `bits.len()`.
    Bits { bits: String },
    /// `mean + amplitude * sin(2 pi x)`.
    Sine { mean: f64, amplitude: f64 },
}

impl InitialProfile {
    fn values(&self) -> Vec<f64> {
        match self {
            InitialProfile::Constant { rho } => vec![*rho],
            InitialProfile::DoubleSided { theta, rho } => vec![*theta, *rho],
            InitialProfile::Piecewise { values, .. } => values.clone(),
            InitialProfile::Bits { .. } => vec![],
            InitialProfile::Sine { mean, amplitude } => vec![mean - amplitude.abs(), mean + amplitude.abs()],
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(v) = self.values().into_iter().find(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::ConfigInvalid(format!("profile value {v} outside [0, 1]")));
        }
        match self {
            InitialProfile::Piecewise { breakpoints, values } => {
                if values.len() != breakpoints.len() + 1 || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::ConfigInvalid("piecewise table needs ascending breakpoints and one extra value".into()));
                }
            }
            InitialProfile::Bits { bits } => {
                if bits.is_empty() || bits.chars().any(|c| c != '0' && c != '1') {
                    return Err(Error::ConfigInvalid("bit string must be a nonempty run of 0 and 1".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Density at macroscopic position `x`.
    pub fn density(&self, x: f64) -> f64 {
        match self {
            InitialProfile::Constant { rho } => *rho,
            InitialProfile::DoubleSided { theta, rho } => {
                if x < 0.0 {
                    *theta
                } else {
                    *rho
                }
            }
            InitialProfile::Piecewise { breakpoints, values } => values[breakpoints.partition_point(|&b| b <= x)],
            InitialProfile::Bits { bits } => {
                let n = bits.len();
                let i = ((x.rem_euclid(1.0)) * n as f64).floor() as usize;
                f64::from(bits.as_bytes()[i.min(n - 1)] - b'0')
            }
            InitialProfile::Sine { mean, amplitude } => mean + amplitude * (2.0 * std::f64::consts::PI * x).sin(),
        }
    }

    /// Occupancy of site `x` in a system of scale `n`; Bernoulli except for bit strings.
    pub fn occupied(&self, rng: &Randomness, x: i64, n: usize, class: usize) -> bool {
        match self {
            InitialProfile::Bits { bits } => bits.as_bytes()[x.rem_euclid(bits.len() as i64) as usize] == b'1',
            _ => rng.bernoulli(Stream::Init, 0, x, class, self.density(x as f64 / n as f64)),
        }
    }

    /// Macroscopic profile on the torus `[0, 1)`, averaged over `cells` cells.
    pub fn torus_profile(&self, cells: usize) -> Result<DensityProfile> {
        let sub = 16;
        let avg: Vec<f64> = (0..cells)
            .map(|i| {
                (0..sub).map(|j| self.density((i as f64 + (j as f64 + 0.5) / sub as f64) / cells as f64)).sum::<f64>()
                    / sub as f64
            })
            .collect();
        DensityProfile::from_torus_cells(&avg)
    }

    /// Macroscopic profile on the line, when it has constant tails.
    pub fn line_profile(&self) -> Result<DensityProfile> {
        match self {
            InitialProfile::Constant { rho } => DensityProfile::constant(Domain::Line, *rho),
            InitialProfile::DoubleSided { theta, rho } => DensityProfile::new(Domain::Line, vec![0.0], vec![*theta, *rho]),
            InitialProfile::Piecewise { breakpoints, values } => {
                DensityProfile::new(Domain::Line, breakpoints.clone(), values.clone())
            }
            _ => Err(Error::ConfigInvalid("profile has no constant tails on the line".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            other => Err(Error::ConfigInvalid(format!("unknown format '{other}'"))),
        }
    }
}

/// Everything needed to reproduce one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub params: ModelParams,
    /// System sizes, strictly ascending.
    pub sizes: Vec<usize>,
    pub replicas: usize,
    pub seed: u64,
    pub profile: InitialProfile,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub format: Format,
    /// Overrides for pass thresholds, by name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Experiment-specific knobs such as step counts, by name.
    #[serde(default)]
    pub options: BTreeMap<String, f64>,
    /// Record wall-clock seconds; off by default so output is reproducible.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, sizes: Vec<usize>, replicas: usize, seed: u64, profile: InitialProfile) -> Self {
        ExperimentConfig {
            experiment,
            params: ModelParams::default(),
            sizes,
            replicas,
            seed,
            profile,
            output: None,
            format: Format::Csv,
            tolerances: BTreeMap::new(),
            options: BTreeMap::new(),
            timing: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let c: ExperimentConfig = toml::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        make_params(self.params.b1, self.params.b2, self.params.lambda)
            .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        if self.sizes.is_empty() || self.sizes.windows(2).any(|w| w[0] >= w[1]) || self.sizes[0] == 0 {
            return Err(Error::ConfigInvalid("sizes must be nonempty, positive and strictly ascending".into()));
        }
        if self.replicas == 0 {
            return Err(Error::ConfigInvalid("replicas must be at least 1".into()));
        }
        self.profile.validate()?;
        if self.experiment == ExperimentKind::E2 {
            match self.profile {
                InitialProfile::DoubleSided { theta, rho } if theta != rho => {}
                _ => return Err(Error::ConfigInvalid("e2 needs a double-sided profile with theta != rho".into())),
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn tol(&self, key: &str, default: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(default)
    }

    pub fn opt(&self, key: &str, default: f64) -> f64 {
        self.options.get(key).copied().unwrap_or(default)
    }

    /// Independent randomness for replica `r`.
    pub fn replica_rng(&self, r: usize) -> Randomness {
        let base = Randomness::new(self.seed, &self.params);
        base.reseed(base.bits(Stream::Aux, -1, r as i64, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentConfig {
        ExperimentConfig::new(ExperimentKind::E3, vec![100, 200], 4, 7, InitialProfile::Constant { rho: 0.4 })
    }

    #[test]
    fn toml_round_trip() {
        let mut c = sample();
        c.options.insert("steps".into(), 50.0);
        let back = ExperimentConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
    }

    #[test]
    fn parses_hand_written_file() {
        let text = r#"
experiment = "e2"
sizes = [500, 1000]
replicas = 3
seed = 11

[profile]
kind = "double-sided"
theta = 0.2
rho = 0.8

[tolerances]
shock_ratio = 0.1
"#;
        let c = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(c.params, ModelParams::default());
        assert_eq!(c.tol("shock_ratio", 0.05), 0.1);
        assert_eq!(c.tol("other", 0.05), 0.05);
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut c = sample();
        c.sizes = vec![200, 100];
        assert!(matches!(c.validate(), Err(Error::ConfigInvalid(_))));
        let mut c = sample();
        c.replicas = 0;
        assert!(c.validate().is_err());
        let mut c = sample();
        c.profile = InitialProfile::Constant { rho: 1.2 };
        assert!(c.validate().is_err());
        let mut c = sample();
        c.experiment = ExperimentKind::E2;
        assert!(c.validate().is_err());
        let mut c = sample();
        c.profile = InitialProfile::Bits { bits: "01x".into() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = sample();
        let mut b = sample();
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn profile_densities() {
        let p = InitialProfile::Piecewise { breakpoints: vec![0.25, 0.5], values: vec![0.1, 0.2, 0.3] };
        assert_eq!(p.density(0.0), 0.1);
        assert_eq!(p.density(0.25), 0.2);
        assert_eq!(p.density(0.9), 0.3);
        let s = InitialProfile::Sine { mean: 0.5, amplitude: 0.3 };
        assert!((s.density(0.25) - 0.8).abs() < 1e-12);
        let t = s.torus_profile(64).unwrap();
        assert!((t.mass() - 0.5).abs() < 1e-9);
    }
}
