//! Estimators: ordering discrepancies, discrete distances, empirical
//! profiles, currents, and window-law comparisons.

mod current;
mod discrepancy;
mod histogram;
mod profile;

pub use current::{current_identity, total_current};
pub use discrepancy::{delta_n, delta_n_profile, discrepancy_r};
pub use histogram::{tv_distance, tv_to_law, Histogram};
pub use profile::{mean_sigma, ProfileEstimate};
