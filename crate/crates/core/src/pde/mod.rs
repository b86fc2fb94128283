//! Entropy solutions of `d_t G + d_x phi(G) = 0`: flux, profiles, Riemann
//! solutions, an upwind solver on the line and torus, distances, and an
//! entropy-inequality residual.

mod distance;
mod entropy;
mod flux;
mod io;
mod profile;
mod riemann;
mod solver;

pub use distance::{delta_distance, finite_speed_check, l1_on};
pub use entropy::{entropy_residual, entropy_residual_exact, Bump, TestFamily};
pub use flux::FluxModel;
pub use io::{from_table, to_table};
pub use profile::{DensityProfile, Domain};
pub use riemann::{riemann_solution, shock_speed, RiemannField};
pub use solver::{SolutionField, Solver, CFL};
