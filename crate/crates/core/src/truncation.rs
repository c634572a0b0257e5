//! Frequency and spatial truncation estimates.
//!
//! For a frame over scales `j ∈ [j_lo, j_hi]` the full window stands in for
//! `j ∈ ℤ`; truncation errors are measured against it exactly in the
//! harmonic basis.

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::frame::{quadratic_form, summation_subset, FrameSpec, HarmonicField, IndexSet, Selection};
use crate::geometry::{cap_area, geodesic, Vec3};
use crate::harmonics::{count, real_harmonics};
use crate::numeric::scan_max;
use crate::partition::CubatureRule;
use crate::spectral::{daubechies_bounds, sphere_eigenvalue, SpectralFilter};

/// First nonzero Laplacian eigenvalue on S².
const LAMBDA_1: f64 = 2.0;

/// `M_J = max_{r > 0} |r^J f(r)|`.
pub fn moment_constant(filter: &SpectralFilter, j: u32) -> Result<f64> {
    if j < 1 {
        return Err(invalid("J", "must be at least 1"));
    }
    let jf = j as f64;
    let (lo, hi) = match filter.support() {
        (lo, hi) if hi.is_finite() => (libm::log(lo), libm::log(hi)),
        _ => (-40.0, 40.0),
    };
    // Work with ln|r^J f(r)| in u = ln r; the maximizer is interior.
    let g = |u: f64| {
        let v = filter.eval(libm::exp(u)).abs();
        if v > 0.0 {
            jf * u + libm::log(v)
        } else {
            f64::NEG_INFINITY
        }
    };
    let (_, best) = scan_max(g, lo, hi, 4001, 1e-10);
    Ok(libm::exp(best))
}

/// Explicit part of the frequency truncation estimate
/// `‖SF − S_{[−M,N]}F‖ ≤ (C₀b + c′_L a^{−4Ml} + C′_J a^{−4NJ})‖F‖ + 2B_a‖(I − P_{[0,L]})F‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyBoundReport {
    pub m: i32,
    pub n: i32,
    pub big_l: f64,
    /// Vanishing order `l` with `f(s) = s^l f₀(s)`.
    pub l: u32,
    /// Decay order `J`.
    pub j: u32,
    pub a: f64,
    pub c_prime_l: f64,
    pub c_prime_j: f64,
    pub m_j: f64,
    /// Daubechies upper bound `B_a`.
    pub b_a: f64,
    pub tail_norm: f64,
    pub f_norm: f64,
    pub bound_without_c0b: f64,
    pub measured_error: Option<f64>,
}

impl FrequencyBoundReport {
    /// Smallest `C₀` that would make the estimate hold for this field at
    /// partition parameter `b`.
    pub fn required_c0(&self, b: f64) -> Option<f64> {
        let e = self.measured_error?;
        Some(((e - self.bound_without_c0b) / (b * self.f_norm)).max(0.0))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn frequency_bound(
    spec: &FrameSpec,
    l: u32,
    j: u32,
    big_l: f64,
    m: i32,
    n: i32,
    tail_norm: f64,
    f_norm: f64,
) -> Result<FrequencyBoundReport> {
    if j < 1 {
        return Err(invalid("J", "must be at least 1"));
    }
    if !(big_l > 0.0) {
        return Err(invalid("L", "must be positive"));
    }
    if l < 1 {
        return Err(invalid("l", "must be at least 1"));
    }
    let f0 = spec.filter.f0_sup(l);
    if !f0.is_finite() {
        return Err(invalid("l", "exceeds the vanishing order of the filter"));
    }
    let a = spec.a;
    let lf = l as f64;
    let jf = j as f64;
    let c_prime_l = libm::pow(big_l, 2.0 * lf) * f0 * f0 / (libm::pow(a, 4.0 * lf) - 1.0);
    let m_j = moment_constant(&spec.filter, j)?;
    let c_prime_j = m_j * m_j / ((libm::pow(a, 4.0 * jf) - 1.0) * libm::pow(LAMBDA_1, 2.0 * jf));
    let b_a = daubechies_bounds(&spec.filter, a, 256)?.upper;
    let bound = (c_prime_l / libm::pow(a, 4.0 * m as f64 * lf) + c_prime_j / libm::pow(a, 4.0 * n as f64 * jf))
        * f_norm
        + 2.0 * b_a * tail_norm;
    Ok(FrequencyBoundReport {
        m,
        n,
        big_l,
        l,
        j,
        a,
        c_prime_l,
        c_prime_j,
        m_j,
        b_a,
        tail_norm,
        f_norm,
        bound_without_c0b: bound,
        measured_error: None,
    })
}

/// `‖(I − P_{[0,L]})F‖`: the part of `F` at eigenvalues `λ_l > L`.
pub fn spectral_tail_norm(field: &HarmonicField, big_l: f64) -> f64 {
    let s: f64 = (0..=field.l_max())
        .filter(|&l| sphere_eigenvalue(l) > big_l)
        .map(|l| field.degree_energy(l))
        .fold(0.0, |acc, e| acc + e);
    libm::sqrt(s)
}

/// `‖SF − S_{[−M,N]}F‖`, with `S` summed over every scale of `spec`.
pub fn measured_truncation_error(spec: &FrameSpec, field: &HarmonicField, m: i32, n: i32) -> Result<f64> {
    let window = IndexSet::window(spec, -m, n)?;
    let rest = IndexSet::all(spec).minus(&window);
    Ok(summation_subset(spec, field, &rest)?.norm())
}

/// Closed geodesic cap `{x : d(x, center) ≤ radius}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cap {
    pub center: Vec3,
    pub radius: f64,
}

impl Cap {
    pub fn new(center: Vec3, radius: f64) -> Self {
        Cap { center: crate::geometry::normalize(center), radius }
    }

    pub fn contains(&self, x: &Vec3) -> bool {
        geodesic(&self.center, x) <= self.radius
    }

    pub fn distance(&self, x: &Vec3) -> f64 {
        (geodesic(&self.center, x) - self.radius).max(0.0)
    }

    pub fn area(&self) -> f64 {
        cap_area(self.radius)
    }
}

/// `I = {(j, k) : d(x_{j,k}, Γ) ≤ (c_j + 1) a^j}`.
pub fn spatial_index_set<C: Fn(i32) -> f64>(spec: &FrameSpec, cap: &Cap, c: C) -> IndexSet {
    let scales = spec
        .scales
        .iter()
        .map(|s| {
            let reach = (c(s.j) + 1.0) * libm::pow(spec.a, s.j as f64);
            let mask: Vec<bool> = s.sampling.points().map(|(x, _)| cap.distance(&x) <= reach).collect();
            if mask.iter().all(|&b| b) {
                Selection::All
            } else if mask.iter().all(|&b| !b) {
                Selection::Nothing
            } else {
                Selection::Cells(mask)
            }
        })
        .collect();
    IndexSet { scales }
}

/// Harmonic coefficients up to `l_max` of `g`, by the product rule of the given
/// degree.
pub fn project<G: Fn(&Vec3) -> f64>(l_max: usize, degree: usize, g: G) -> Result<HarmonicField> {
    let rule = CubatureRule::new(degree)?;
    let mut coeffs = alloc::vec![0.0; count(l_max)];
    for (x, w) in rule.nodes() {
        let v = g(&x);
        if v == 0.0 {
            continue;
        }
        let y = real_harmonics(l_max, &x);
        for (c, yi) in coeffs.iter_mut().zip(&y) {
            *c += w * v * yi;
        }
    }
    HarmonicField::from_coeffs(l_max, coeffs)
}

/// `χ_Γ F` projected back to the band limit of `F`, with quadrature of degree
/// `2·l_max`.
pub fn restrict_to_cap(field: &HarmonicField, cap: &Cap) -> Result<HarmonicField> {
    let l = field.l_max();
    project(l, 2 * l.max(1), |x| if cap.contains(x) { field.evaluate(x) } else { 0.0 })
}

/// Mean-zero band-limited bump `exp(−d(x, center)²/(2w²))`, unit norm.
pub fn bell_field(l_max: usize, center: &Vec3, width: f64) -> Result<HarmonicField> {
    if !(width > 0.0) {
        return Err(invalid("width", "must be positive"));
    }
    let c = crate::geometry::normalize(*center);
    let mut f = project(l_max, 2 * l_max.max(1), |x| {
        let d = geodesic(&c, x);
        libm::exp(-0.5 * d * d / (width * width))
    })?;
    f.remove_mean();
    let n = f.norm();
    if n == 0.0 {
        return Err(crate::Error::ZeroField);
    }
    f.scale(1.0 / n);
    Ok(f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialReport {
    /// Elements in `I` and in the whole frame.
    pub selected: usize,
    pub total: usize,
    /// `‖S F − S_I F‖ = ‖S_{I^c} F‖`.
    pub measured_error: f64,
    /// `⟨S_{I^c} F, F⟩`.
    pub complement_energy: f64,
    /// `[μ(Γ) Σ_j a^{−2j} c_j^{2−2I}]^{1/2} ‖χF‖`.
    pub structural_factor: f64,
    pub restricted_norm: f64,
    /// `B·‖(1 − χ)F‖`.
    pub leakage: f64,
    /// `measured_error / structural_factor`, the empirical `C₁`-type constant.
    pub ratio: f64,
}

/// Compare `‖S F − S_I F‖` with the terms of the spatial truncation estimate.
/// `frame_bound` is the upper frame bound used for the leakage term.
pub fn spatial_truncation_report<C: Fn(i32) -> f64>(
    spec: &FrameSpec,
    field: &HarmonicField,
    cap: &Cap,
    c: C,
    i_decay: f64,
    frame_bound: f64,
) -> Result<SpatialReport> {
    let set = spatial_index_set(spec, cap, &c);
    let rest = IndexSet::all(spec).minus(&set);
    let s_rest = summation_subset(spec, field, &rest)?;
    let complement_energy = quadratic_form(spec, field, &rest)?;
    let chi = restrict_to_cap(field, cap)?;
    let outside = field.sub(&chi);
    let sum: f64 = spec
        .scales
        .iter()
        .map(|s| {
            let cj = c(s.j);
            libm::pow(spec.a, -2.0 * s.j as f64) * libm::pow(cj, 2.0 - 2.0 * i_decay)
        })
        .sum();
    let restricted_norm = chi.norm();
    let structural_factor = libm::sqrt(cap.area() * sum) * restricted_norm;
    let measured_error = s_rest.norm();
    Ok(SpatialReport {
        selected: set.count(spec),
        total: spec.element_count(),
        measured_error,
        complement_energy,
        structural_factor,
        restricted_norm,
        leakage: frame_bound * outside.norm(),
        ratio: if structural_factor > 0.0 { measured_error / structural_factor } else { f64::INFINITY },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{E, PI};

    const M1: SpectralFilter = SpectralFilter::Mexican(1);

    #[test]
    fn moment_constants() {
        let m1 = moment_constant(&M1, 1).unwrap();
        assert!((m1 / (4.0 / (E * E)) - 1.0).abs() < 1e-8);
        let m3 = moment_constant(&M1, 3).unwrap();
        assert!((m3 / (256.0 * libm::exp(-4.0)) - 1.0).abs() < 1e-8);
        // Support restriction: the maximum sits inside [1/2, 2].
        let mc = moment_constant(&SpectralFilter::CutoffBump, 2).unwrap();
        let direct = scan_max(|s| s * s * SpectralFilter::CutoffBump.eval(s), 0.5, 2.0, 20001, 1e-12).1;
        assert!((mc / direct - 1.0).abs() < 1e-8);
        assert!(moment_constant(&M1, 0).is_err());
    }

    fn spec() -> FrameSpec {
        FrameSpec::new(M1, libm::cbrt(2.0), 0.5, (-4, 1), 8).unwrap()
    }

    #[test]
    fn bound_constants() {
        let s = spec();
        let a = s.a;
        let r = frequency_bound(&s, 1, 1, 2.0, 3, 3, 0.0, 1.0).unwrap();
        assert!((r.c_prime_l - 4.0 / (libm::pow(2.0, 4.0 / 3.0) - 1.0)).abs() < 1e-12);
        assert!((r.c_prime_l - 2.632).abs() < 1e-3);
        let mj = moment_constant(&M1, 1).unwrap();
        assert!((r.c_prime_j - mj * mj / ((libm::pow(a, 4.0) - 1.0) * 4.0)).abs() < 1e-14);
        let far = frequency_bound(&s, 1, 1, 2.0, 400, 400, 0.0, 1.0).unwrap();
        assert!(far.bound_without_c0b < 1e-40);
        assert!(frequency_bound(&s, 1, 0, 2.0, 1, 1, 0.0, 1.0).is_err());
        assert!(frequency_bound(&s, 1, 1, 0.0, 1, 1, 0.0, 1.0).is_err());
        assert!(frequency_bound(&s, 2, 1, 2.0, 1, 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn bound_decreases_in_m_and_n() {
        let s = spec();
        let b = |m, n| frequency_bound(&s, 1, 2, 30.0, m, n, 0.1, 1.0).unwrap().bound_without_c0b;
        for k in 0..6 {
            assert!(b(k + 1, 2) < b(k, 2));
            assert!(b(2, k + 1) < b(2, k));
        }
    }

    #[test]
    fn tail_norm_threshold() {
        let f = HarmonicField::single(4, 3, 1);
        assert_eq!(spectral_tail_norm(&f, 11.0), 1.0);
        assert_eq!(spectral_tail_norm(&f, 12.0), 0.0);
        let g = HarmonicField::random_batch(5, 1, 4).remove(0);
        assert!((spectral_tail_norm(&g, 0.0) - g.norm()).abs() < 1e-15);
        assert_eq!(spectral_tail_norm(&g, 30.0), 0.0);
    }

    #[test]
    fn truncation_error_window() {
        let s = spec();
        let f = HarmonicField::random_batch(8, 1, 2).remove(0);
        assert_eq!(measured_truncation_error(&s, &f, 4, 1).unwrap(), 0.0);
        let mut prev = 0.0;
        for n in (-3..=1).rev() {
            let e = measured_truncation_error(&s, &f, 4, n).unwrap();
            assert!(e >= prev);
            prev = e;
        }
        assert!(measured_truncation_error(&s, &f, 5, 1).is_err());
    }

    #[test]
    fn index_sets_from_caps() {
        let s = spec();
        let north = Cap::new([0.0, 0.0, 1.0], 0.3);
        assert_eq!(spatial_index_set(&s, &north, |_| 1e6), IndexSet::all(&s));
        let sphere = Cap::new([0.0, 0.0, 1.0], PI);
        assert_eq!(spatial_index_set(&s, &sphere, |_| 1e-3), IndexSet::all(&s));
        let set = spatial_index_set(&s, &north, |_| 2.0);
        // Finest scale: reach 3·2^{-4/3} < π − 0.3, so southern points drop out.
        let fine = &s.scales[0];
        let reach = 3.0 * libm::pow(s.a, -4.0);
        match &set.scales[0] {
            Selection::Cells(mask) => {
                for ((x, _), &inside) in fine.sampling.points().zip(mask) {
                    assert_eq!(inside, north.distance(&x) <= reach);
                }
                let south: Vec<bool> =
                    fine.sampling.points().zip(mask).filter(|((x, _), _)| x[2] < -0.9).map(|(_, &b)| b).collect();
                assert!(!south.is_empty() && south.iter().all(|&b| !b));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spatial_report_terms() {
        let s = spec();
        let cap = Cap::new([0.0, 0.0, 1.0], 0.6);
        let f = bell_field(8, &[0.0, 0.0, 1.0], 0.3).unwrap();
        assert!(f.is_mean_zero() && (f.norm() - 1.0).abs() < 1e-14);
        let r1 = spatial_truncation_report(&s, &f, &cap, |_| 1.0, 3.0, 1.0).unwrap();
        let r2 = spatial_truncation_report(&s, &f, &cap, |_| 2.0, 3.0, 1.0).unwrap();
        assert!(r2.structural_factor < r1.structural_factor);
        assert!(r2.complement_energy <= r1.complement_energy);
        assert!(r1.measured_error * r1.measured_error <= 10.0 * r1.complement_energy);
        let whole = Cap::new([0.0, 0.0, 1.0], PI);
        let r = spatial_truncation_report(&s, &f, &whole, |_| 1.0, 3.0, 1.0).unwrap();
        assert!(r.leakage < 1e-10, "{}", r.leakage);
        assert_eq!(r.measured_error, 0.0);
    }
}
