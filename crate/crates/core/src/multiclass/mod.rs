//! Multi-class dynamics, class labelling, projection, and the coupling of
//! several single-class models through shared class-keyed randomness.

mod config;
mod coupling;
mod speed;
mod step;

pub use config::{project_classes, MultiClassConfiguration};
pub use coupling::{assign_classes, higher_rank_step, CoupledSystem, StepAudit};
pub use speed::{tagged_speed_tail, TailPoint, MIN_SAMPLES};
pub use step::step_multiclass;
