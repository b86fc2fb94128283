//! Stochastic six-vertex model on the line, the ring and the half-plane.
//!
//! The crate provides exact one-step samplers, the monotone and higher-rank
//! couplings, samplers for the translation-invariant Gibbs measures, a
//! finite-volume oracle for the limiting conservation law, and an experiment
//! harness that checks simulated statistics against that oracle.

pub mod dynamics;
pub mod error;
pub mod gibbs;
pub mod harness;
pub mod model;
pub mod multiclass;
pub mod oracle;
pub mod pde;
pub mod stats;

pub use error::{Error, Result};
pub use model::{
    draw_randomness, make_params, validate_ensemble, KeyedStep, ModelParams, ParticleConfiguration, Pos, Randomness,
    SiteCoins, StepRandomness, Stream, Topology, VertexEnsemble,
};
