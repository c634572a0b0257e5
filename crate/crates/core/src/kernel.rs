//! The zonal kernel `4π h_t(cos θ) = Σ_l (2l+1) f(t² l(l+1)) P_l(cos θ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::spectral::{Convention, SpectralFilter};

/// Largest number of series terms before the series path gives up.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Default scale below which [`kernel_auto`] uses the Gaussian approximation.
pub const T_CROSS: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Gaussian,
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Gaussian => "gaussian",
            Method::Auto => "auto",
        }
    }
}

impl core::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Method::Series),
            "gaussian" => Ok(Method::Gaussian),
            "auto" => Ok(Method::Auto),
            _ => Err(invalid("method", "expected series, gaussian or auto")),
        }
    }
}

fn upper_incomplete_gamma_int(r: u32, s: f64) -> f64 {
    // Γ(r+1, s) = r! e^{-s} Σ_{k≤r} s^k / k!
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=r {
        term *= s / k as f64;
        sum += term;
    }
    let fact: f64 = (1..=r).map(|k| k as f64).product();
    fact * libm::exp(-s) * sum
}

/// Certified bound on `Σ_{l>L} (2l+1)|f(arg(t,l))|`, or `None` when the
/// terms are not yet monotone past `L`.
fn tail_bound(filter: &SpectralFilter, conv: Convention, t: f64, l: usize) -> Option<f64> {
    let (_, hi) = filter.support();
    let arg = conv.argument(t, l);
    if hi.is_finite() {
        // Finite support: every later term vanishes once the argument has left it.
        return if arg >= hi { Some(0.0) } else { None };
    }
    let r = filter.vanishing_order()?;
    match conv {
        Convention::Laplacian => {
            // With u = t² l(l+1), (2l+1) dl = du/t², so the sum is bounded
            // by ∫_{u_L}^∞ f(u) du / t² once the terms decrease in l, which
            // holds for u > r + 1/2.
            let u = arg;
            if u <= r as f64 + 1.0 {
                return None;
            }
            Some(upper_incomplete_gamma_int(r, u) / (t * t))
        }
        _ => {
            // (2l+1) f(t ν_l) with ν_l ≥ l: bound by the geometric ratio of
            // consecutive terms once they decrease.
            let term = |k: usize| (2.0 * k as f64 + 1.0) * filter.eval(conv.argument(t, k)).abs();
            let (t0, t1) = (term(l), term(l + 1));
            if arg <= 2.0 * r as f64 + 2.0 || t1 >= t0 {
                return None;
            }
            let q = t1 / t0.max(f64::MIN_POSITIVE);
            if q >= 1.0 {
                return None;
            }
            Some(t1 / (1.0 - q))
        }
    }
}

/// Series truncation degree `L` such that the certified tail is below `tol`.
pub fn series_cutoff(filter: &SpectralFilter, conv: Convention, t: f64, tol: f64) -> Result<usize> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(invalid("t", "must be a finite number > 0"));
    }
    if !(tol > 0.0) {
        return Err(invalid("tol", "must be > 0"));
    }
    let mut l = 0usize;
    loop {
        if l > MAX_SERIES_TERMS {
            return Err(Error::SeriesOverflow { required: l as u64 });
        }
        if let Some(b) = tail_bound(filter, conv, t, l) {
            if b < tol {
                return Ok(l);
            }
        }
        l = if l < 16 { l + 1 } else { l + l / 16 };
    }
}

/// `Σ_{l ≤ L} (2l+1) f(arg(t,l)) P_l(cos θ)` with `L` from [`series_cutoff`].
pub fn kernel_series_with(
    filter: &SpectralFilter,
    conv: Convention,
    t: f64,
    cos_theta: f64,
    tol: f64,
) -> Result<f64> {
    if !(-1.0..=1.0).contains(&cos_theta) {
        return Err(invalid("cos_theta", "must lie in [-1, 1]"));
    }
    let l_max = series_cutoff(filter, conv, t, tol)?;
    Ok(series_sum(filter, conv, t, cos_theta, l_max))
}

pub fn kernel_series(filter: &SpectralFilter, t: f64, cos_theta: f64, tol: f64) -> Result<f64> {
    kernel_series_with(filter, filter.natural_convention(), t, cos_theta, tol)
}

pub(crate) fn series_sum(filter: &SpectralFilter, conv: Convention, t: f64, x: f64, l_max: usize) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    let mut sum = filter.eval(conv.argument(t, 0));
    for l in 1..=l_max {
        if l > 1 {
            let k = (l - 1) as f64;
            let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        let fl = filter.eval(conv.argument(t, l));
        if fl != 0.0 {
            sum += (2.0 * l as f64 + 1.0) * fl * p1;
        }
    }
    sum
}

/// Small-`t` approximation of `4π h_t(cos θ)` for `f(s) = s e^{-s}`.
pub fn kernel_gaussian_approx(filter: &SpectralFilter, t: f64, theta: f64) -> Result<f64> {
    if !filter.is_mexican(1) {
        return Err(Error::UnsupportedFilter("Gaussian approximation exists only for mexican:r=1"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(invalid("t", "must be a finite number > 0"));
    }
    Ok(gaussian_value(t, theta))
}

fn gaussian_value(t: f64, theta: f64) -> f64 {
    let t2 = t * t;
    let t4 = t2 * t2;
    let t6 = t4 * t2;
    let t8 = t4 * t4;
    let h = theta * theta / 4.0;
    let p = 1.0
        + t2 / 3.0
        + t4 / 15.0
        + 4.0 * t6 / 315.0
        + t8 / 315.0
        + h * (1.0 / 3.0 + 2.0 * t2 / 15.0 + 4.0 * t4 / 105.0 + 4.0 * t6 / 315.0);
    let q = 1.0 / 3.0 + 2.0 * t2 / 15.0 + 4.0 * t4 / 105.0 + 4.0 * t6 / 315.0
        + h * (2.0 / 15.0 + 8.0 * t2 / 105.0 + 4.0 * t4 / 105.0);
    let e = h / t2;
    libm::exp(-e) / t2 * ((1.0 - e) * p - t2 * q)
}

/// Gaussian approximation for `mexican:r=1` below `t_cross`, series otherwise.
pub fn kernel_auto_with(filter: &SpectralFilter, t: f64, cos_theta: f64, tol: f64, t_cross: f64) -> Result<f64> {
    if filter.is_mexican(1) && t < t_cross {
        if !(-1.0..=1.0).contains(&cos_theta) {
            return Err(invalid("cos_theta", "must lie in [-1, 1]"));
        }
        kernel_gaussian_approx(filter, t, libm::acos(cos_theta))
    } else {
        kernel_series(filter, t, cos_theta, tol)
    }
}

pub fn kernel_auto(filter: &SpectralFilter, t: f64, cos_theta: f64, tol: f64) -> Result<f64> {
    kernel_auto_with(filter, t, cos_theta, tol, T_CROSS)
}

/// Sampled kernel on the uniform grid `θ_i = -π + 2πi/(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelProfile {
    pub t: f64,
    pub filter: SpectralFilter,
    pub convention: Convention,
    /// `Series` or `Gaussian`; `Auto` is resolved before sampling.
    pub method: Method,
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
}

/// Uniform grid of `n` angles on `[-π, π]`, exactly antisymmetric.
pub fn theta_grid(n: usize) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n).map(|i| PI * (2.0 * i as f64 - d) / d).collect()
}

pub fn kernel_profile(
    filter: &SpectralFilter,
    conv: Convention,
    t: f64,
    n_theta: usize,
    method: Method,
    tol: f64,
) -> Result<KernelProfile> {
    if n_theta < 2 {
        return Err(invalid("n_theta", "must be at least 2"));
    }
    let thetas = theta_grid(n_theta);
    let use_gaussian = match method {
        Method::Gaussian => true,
        Method::Series => false,
        Method::Auto => filter.is_mexican(1) && conv == Convention::Laplacian && t < T_CROSS,
    };
    let values = if use_gaussian {
        kernel_gaussian_approx(filter, t, 0.0)?;
        thetas.iter().map(|th| gaussian_value(t, th.abs())).collect()
    } else {
        let l_max = series_cutoff(filter, conv, t, tol)?;
        thetas
            .iter()
            .map(|th| series_sum(filter, conv, t, libm::cos(th.abs()), l_max))
            .collect()
    };
    let method = if use_gaussian { Method::Gaussian } else { Method::Series };
    Ok(KernelProfile { t, filter: *filter, convention: conv, method, thetas, values })
}
