//! Spectral filters and sphere eigendata.

mod daubechies;
mod eigen;
mod filter;

pub use daubechies::{
    calderon_constant, daubechies_bounds, daubechies_sum, truncated_daubechies_sum, DaubechiesBounds,
};
pub(crate) use daubechies::dyadic_argument;
pub use eigen::{legendre, legendre_all, multiplicity, sphere_eigenvalue};
pub use filter::{cutoff_bump, Convention, SpectralFilter};
