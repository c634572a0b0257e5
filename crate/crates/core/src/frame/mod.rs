//! Band-limited fields and frames `{φ_{j,k}}` on S².
//!
//! `φ_{j,k}` has harmonic coefficients `μ(E_{j,k})^{1/2} f(a^{2j} l(l+1))
//! Y_{lq}(x_{j,k})`, so the summation operator is
//! `SF = Σ ⟨F, φ_{j,k}⟩ φ_{j,k}` and `⟨SF, F⟩ = Σ ⟨F, φ_{j,k}⟩²`.

mod field;
mod ops;
mod sampling;
mod spec;

pub use field::HarmonicField;
pub use ops::{
    analyze, element_point, empirical_frame_bounds, frame_element, operator_norm_estimate, quadratic_form,
    quadratic_form_with, rayleigh_quotient, scale_energies, summation_operator, summation_subset,
    summation_subset_with, EmpiricalBounds, FrameCoefficients, IndexSet, Selection, Summation,
};
pub use sampling::{Ring, Sampling};
pub use spec::{adequate_window, frame_convention, FrameSpec, Scale};
