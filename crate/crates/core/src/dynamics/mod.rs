//! Single-class dynamics: line, ring, half-plane, and the monotone coupling.

mod half_plane;
mod line;
mod monotone;
mod ops;
mod ring;
mod separating;
mod trajectory;

pub use half_plane::{evolve_half_plane_infinite, HalfPlaneRun};
pub use line::{step_line, step_positions};
pub use monotone::monotone_step;
pub use ops::{evolve_m, shift_s};
pub use ring::{step_line_transfer, step_ring, RingStep};
pub use separating::{find_separating, separates_step, tail_depth, Separating, TAIL_TOLERANCE};
pub use trajectory::{run_line, run_ring, Trajectory};
