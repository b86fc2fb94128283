//! Samplers for the translation-invariant Gibbs measure of slope `(rho, phi(rho))`.

mod exact;
mod quadrant;
mod window;

pub use exact::exact_window_law;
pub use quadrant::{sample_quadrant, sample_quadrant_with};
pub use window::{halo_ok, sample_mu_window, window_histogram, GibbsWindowSample, WindowMethod};
