//! Nearly-tight wavelet frames on the sphere built from spectral filters of
//! the Laplace–Beltrami operator.
//!
//! The crate is `no_std` (with `alloc`) and contains only the numerical
//! machinery:
//!
//! * [`spectral`]: filters `f`, the Calderón constant, Daubechies sums and
//!   frame-bound constants, sphere eigendata and Legendre polynomials.
//! * [`kernel`]: the zonal kernel `4π h_t(cos θ)` by eigen-series and by the
//!   small-`t` Gaussian approximation.
//! * [`partition`]: per-scale partitions of S² into small cells, the
//!   maximal-ball construction, and product cubature rules.
//! * [`frame`]: band-limited fields, frame elements, analysis coefficients
//!   and the summation operator `S`.
//! * [`truncation`]: frequency and spatial truncation estimates.
//! * [`needlet`]: cutoff-function needlets and the hybrid tail diagnostics.
//!
//! All inner products are computed exactly in a real orthonormal
//! spherical-harmonic basis; there is no quadrature error in the frame
//! arithmetic.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod frame;
pub mod geometry;
pub mod harmonics;
pub mod kernel;
pub mod needlet;
pub mod numeric;
pub mod partition;
pub mod spectral;
pub mod truncation;

pub use error::{Error, Result};
pub use frame::{FrameCoefficients, FrameSpec, HarmonicField};
pub use spectral::{Convention, DaubechiesBounds, SpectralFilter};
