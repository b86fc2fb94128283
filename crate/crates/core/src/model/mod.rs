//! Parameters, configurations, edge ensembles and keyed randomness.

mod config;
mod ensemble;
mod params;
mod rng;

pub use config::{ParticleConfiguration, Pos, Topology};
pub use ensemble::{validate_ensemble, vertex_weight, VertexEnsemble};
pub use params::{make_params, ModelParams};
pub use rng::{draw_randomness, geometric_from_uniform, KeyedStep, Randomness, SiteCoins, SpaceTimeCoins, StepRandomness, Stream};
