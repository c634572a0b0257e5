//! Calderón constant, Daubechies sums and frame-bound constants.
//!
//! For filters of `t²Δ` the dyadic sum is `g(λ) = Σ_j |f(a^{2j}λ)|²`. For the
//! first-order cutoff kinds the same sum is taken over `f(a^j √λ)`, which keeps
//! `g(a²λ) = g(λ)` and gives `A = B = 1` for the normalized cutoff at `a = 2`.

use crate::error::{invalid, Error, Result};
use crate::numeric;

use super::SpectralFilter;

const TAIL_REL: f64 = 1e-18;
const MAX_TERMS: i64 = 1_000_000;

/// `c = ∫₀^∞ |f(t)|² dt/t`, integrated in `u = ln t`.
pub fn calderon_constant(filter: &SpectralFilter) -> Result<f64> {
    if filter.vanishing_order() == Some(0) {
        return Err(Error::DivergentIntegral);
    }
    let (lo, hi) = match filter.support() {
        (lo, hi) if hi.is_finite() => (libm::log(lo), libm::log(hi)),
        _ => (-40.0, 40.0),
    };
    let integrand = |u: f64| {
        let v = filter.eval(libm::exp(u));
        v * v
    };
    let (value, _) = numeric::integrate(integrand, lo, hi, 1e-300, 1e-13);
    Ok(value)
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(invalid("a", "dilation must be a finite number > 1"));
    }
    Ok(())
}

/// Filter argument for scale index `j` at spectral value `lam`.
pub(crate) fn dyadic_argument(filter: &SpectralFilter, a: f64, lam: f64, j: i64) -> f64 {
    if filter.order() == 2 {
        libm::pow(a, 2.0 * j as f64) * lam
    } else {
        libm::pow(a, j as f64) * libm::sqrt(lam)
    }
}

fn term(filter: &SpectralFilter, a: f64, lam: f64, j: i64) -> f64 {
    let v = filter.eval(dyadic_argument(filter, a, lam, j));
    v * v
}

/// Scale index whose argument lies closest (in log) to the filter peak.
fn peak_index(filter: &SpectralFilter, a: f64, lam: f64) -> i64 {
    let ln_a = libm::log(a);
    let x = if filter.order() == 2 {
        libm::log(filter.peak() / lam) / (2.0 * ln_a)
    } else {
        libm::log(filter.peak() / libm::sqrt(lam)) / ln_a
    };
    libm::round(x) as i64
}

/// `g(λ) = Σ_{j∈ℤ} |f(a^{2j}λ)|²`, summed outward from the peak until two
/// consecutive terms on each tail fall below `1e-18` of the running sum.
pub fn daubechies_sum(filter: &SpectralFilter, a: f64, lam: f64) -> Result<f64> {
    check_a(a)?;
    if !(lam > 0.0) {
        return Err(invalid("lam", "must be > 0"));
    }
    let (lo, hi) = filter.support();
    let peak = filter.peak();
    let j0 = peak_index(filter, a, lam);
    let mut sum = term(filter, a, lam, j0);
    for dir in [1i64, -1] {
        let mut small = 0;
        let mut j = j0;
        loop {
            j += dir;
            if (j - j0).abs() > MAX_TERMS {
                break;
            }
            let x = dyadic_argument(filter, a, lam, j);
            let t = term(filter, a, lam, j);
            sum += t;
            let past = if dir > 0 { x > peak } else { x < peak };
            let outside = if dir > 0 { x >= hi } else { x <= lo };
            if outside || x == 0.0 || x.is_infinite() {
                break;
            }
            if past && t <= TAIL_REL * sum {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
    }
    Ok(sum)
}

/// `g_{M,N}(λ) = Σ_{j=-M}^{N} |f(a^{2j}λ)|²`.
pub fn truncated_daubechies_sum(
    filter: &SpectralFilter,
    a: f64,
    lam: f64,
    m: i64,
    n: i64,
) -> Result<f64> {
    check_a(a)?;
    if !(lam > 0.0) {
        return Err(invalid("lam", "must be > 0"));
    }
    Ok((-m..=n).map(|j| term(filter, a, lam, j)).sum())
}

/// Lower and upper Daubechies constants over one period `λ ∈ [1, a²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DaubechiesBounds {
    pub a: f64,
    /// `A_a = min g`.
    pub lower: f64,
    /// `B_a = max g`.
    pub upper: f64,
    pub ratio: f64,
    /// `c / (order · ln a)`, the log-average of `g` over a period.
    pub reference_level: f64,
}

/// Scan `g` on a log-uniform grid of `grid_points` values of `λ ∈ [1, a²)` and
/// refine the grid extrema by golden-section search.
pub fn daubechies_bounds(filter: &SpectralFilter, a: f64, grid_points: usize) -> Result<DaubechiesBounds> {
    check_a(a)?;
    if grid_points < 64 {
        return Err(invalid("grid_points", "must be at least 64"));
    }
    let period = 2.0 * libm::log(a);
    let g = |u: f64| daubechies_sum(filter, a, libm::exp(u)).unwrap_or(f64::NAN);
    let step = period / grid_points as f64;
    let values: alloc::vec::Vec<f64> = (0..grid_points).map(|i| g(step * i as f64)).collect();
    let (mut i_min, mut i_max) = (0, 0);
    for (i, &v) in values.iter().enumerate() {
        if v < values[i_min] {
            i_min = i;
        }
        if v > values[i_max] {
            i_max = i;
        }
    }
    // g is periodic in u, so the bracket may straddle the period boundary.
    let tol = 1e-11 * period;
    let (_, upper) = numeric::golden_max(&g, step * (i_max as f64 - 1.0), step * (i_max as f64 + 1.0), tol);
    let (_, neg_lower) = numeric::golden_max(
        |u| -g(u),
        step * (i_min as f64 - 1.0),
        step * (i_min as f64 + 1.0),
        tol,
    );
    let upper = upper.max(values[i_max]);
    let lower = (-neg_lower).min(values[i_min]);
    let c = calderon_constant(filter)?;
    Ok(DaubechiesBounds {
        a,
        lower,
        upper,
        ratio: upper / lower,
        reference_level: c / (filter.order() as f64 * libm::log(a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const M1: SpectralFilter = SpectralFilter::Mexican(1);

    fn gamma_int(n: u32) -> f64 {
        (1..n).map(|k| k as f64).product()
    }

    #[test]
    fn calderon_closed_forms() {
        for r in 1..=3u32 {
            let exact = gamma_int(2 * r) / libm::pow(2.0, 2.0 * r as f64);
            let c = calderon_constant(&SpectralFilter::Mexican(r)).unwrap();
            assert!(((c - exact) / exact).abs() < 1e-10, "r={r}: {c} vs {exact}");
        }
        assert!((calderon_constant(&M1).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(calderon_constant(&SpectralFilter::Mexican(0)), Err(Error::DivergentIntegral));
        let cb = calderon_constant(&SpectralFilter::CutoffBump).unwrap();
        assert!(cb > 0.0 && cb.is_finite());
        let cn = calderon_constant(&SpectralFilter::NormalizedCutoff).unwrap();
        assert!((cn - core::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn sum_at_unit_lambda() {
        let g = daubechies_sum(&M1, 2.0, 1.0).unwrap();
        // Direct oracle: j from -60 to 10.
        let direct: f64 = (-60..=10)
            .map(|j| {
                let s = libm::pow(4.0, j as f64);
                let v = s * libm::exp(-s);
                v * v
            })
            .sum();
        assert!((g - direct).abs() < 1e-15);
        assert!((g - 0.18231).abs() < 1e-5, "{g}");
    }

    #[test]
    fn truncated_examples() {
        let f1 = M1.eval(1.7);
        assert_eq!(truncated_daubechies_sum(&M1, 2.0, 1.7, 0, 0).unwrap(), f1 * f1);
        let full = daubechies_sum(&M1, 2.0, 1.0).unwrap();
        let t = truncated_daubechies_sum(&M1, 2.0, 1.0, 5, 5).unwrap();
        // The j = -6 term alone is (4^{-6} e^{-4^{-6}})² ≈ 5.96e-8.
        assert!(t <= full && (full - t - 6.354_87e-8).abs() < 1e-12, "{}", full - t);
        let t = truncated_daubechies_sum(&M1, 2.0, 1.0, 10, 5).unwrap();
        assert!(t <= full && full - t < 1e-10);
    }

    #[test]
    fn bounds_ratio_trend() {
        let b2 = daubechies_bounds(&M1, 2.0, 256).unwrap();
        let b3 = daubechies_bounds(&M1, libm::cbrt(2.0), 256).unwrap();
        let b6 = daubechies_bounds(&M1, libm::pow(2.0, 1.0 / 6.0), 256).unwrap();
        assert!((b3.ratio - 1.0).abs() < 5e-5, "{}", b3.ratio);
        assert!(b6.ratio < b3.ratio && b3.ratio < b2.ratio);
        for b in [b2, b3, b6] {
            assert!(b.lower > 0.0 && b.lower <= b.reference_level && b.reference_level <= b.upper);
        }
        let rel = (b3.reference_level - 0.25 / (2.0 * libm::log(libm::cbrt(2.0)))).abs();
        assert!(rel < 1e-12);
    }

    #[test]
    fn normalized_cutoff_is_tight() {
        let b = daubechies_bounds(&SpectralFilter::NormalizedCutoff, 2.0, 128).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-10 && (b.upper - 1.0).abs() < 1e-10);
        assert!((b.reference_level - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_dilation() {
        assert!(daubechies_sum(&M1, 1.0, 1.0).is_err());
        assert!(daubechies_bounds(&M1, 2.0, 10).is_err());
    }

    proptest! {
        #[test]
        fn periodic_in_a_squared(u in -7.0f64..7.0, k in 0usize..3, fi in 0usize..3) {
            let a = [2.0, libm::cbrt(2.0), 1.5][k];
            let f = [M1, SpectralFilter::Mexican(2), SpectralFilter::CutoffBump][fi];
            let lam = libm::exp(u);
            let g1 = daubechies_sum(&f, a, lam).unwrap();
            let g2 = daubechies_sum(&f, a, a * a * lam).unwrap();
            prop_assert!(((g1 - g2) / g1).abs() < 1e-12);
        }

        #[test]
        fn truncated_is_sandwiched(u in -7.0f64..7.0, m in 0i64..20, n in 0i64..20) {
            let lam = libm::exp(u);
            let a = libm::cbrt(2.0);
            let full = daubechies_sum(&M1, a, lam).unwrap();
            let part = truncated_daubechies_sum(&M1, a, lam, m, n).unwrap();
            prop_assert!(part <= full * (1.0 + 1e-14));
        }

        #[test]
        fn bounds_hold_pointwise(u in -6.9f64..6.9) {
            for a in [libm::cbrt(2.0), libm::pow(2.0, 1.0 / 6.0)] {
                let b = daubechies_bounds(&M1, a, 128).unwrap();
                let g = daubechies_sum(&M1, a, libm::exp(u)).unwrap();
                prop_assert!(g >= b.lower * (1.0 - 1e-12) && g <= b.upper * (1.0 + 1e-12));
            }
        }
    }
}
