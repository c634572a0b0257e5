//! Cutoff needlets and hybrid tail diagnostics.
//!
//! A needlet frame uses a normalized cutoff `g` with `Σ_j g(2^j s)² = 1` and,
//! at scale `j`, an exact cubature rule of degree `2·l(j)` where `l(j)` is the
//! last degree carried by `g(2^j ν_l)`. The resulting frame is tight on the
//! covered degrees.

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::frame::{FrameSpec, Scale};
use crate::numeric::bisect;
use crate::partition::CubatureRule;
use crate::spectral::{Convention, SpectralFilter};

/// Largest cut degree `l(j)` accepted.
pub const MAX_CUT_DEGREE: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct NeedletFrame {
    pub frame: FrameSpec,
    /// `(j, l(j))` per scale.
    pub cut_degrees: Vec<(i32, usize)>,
}

fn nu(conv: Convention, l: usize) -> f64 {
    conv.argument(1.0, l)
}

/// Largest `l` with `2^j ν_l < 2`.
pub fn cut_degree(j: i32, conv: Convention) -> usize {
    let t = libm::ldexp(1.0, j);
    let bound = 2.0 / t;
    let mut l = match conv {
        Convention::Degree => libm::floor(bound) as usize,
        _ => libm::floor(libm::sqrt(bound * bound + 0.25) - 0.5) as usize,
    };
    while l > 0 && t * nu(conv, l) >= 2.0 {
        l -= 1;
    }
    while t * nu(conv, l + 1) < 2.0 {
        l += 1;
    }
    l
}

/// Needlet frame over `j_min ≤ j ≤ j_max` built from `g`.
pub fn build_needlet_frame(g: SpectralFilter, j_min: i32, j_max: i32, conv: Convention) -> Result<NeedletFrame> {
    if g != SpectralFilter::NormalizedCutoff {
        return Err(Error::UnsupportedFilter("needlets need the normalized cutoff"));
    }
    if conv == Convention::Laplacian {
        return Err(invalid("convention", "needlets use the degree or sqrt_laplacian convention"));
    }
    if j_min > j_max {
        return Err(invalid("j_range", "j_min must not exceed j_max"));
    }
    let mut cut_degrees = Vec::new();
    for j in j_min..=j_max {
        let l = cut_degree(j, conv);
        if l > MAX_CUT_DEGREE {
            return Err(Error::DegreeOverflow { degree: l });
        }
        cut_degrees.push((j, l));
    }
    let l_max = cut_degrees.iter().map(|&(_, l)| l).max().unwrap_or(0);
    let scales = cut_degrees
        .iter()
        .map(|&(j, l)| {
            let rule = CubatureRule::new(2 * l)?;
            Ok(Scale::new(j, libm::ldexp(1.0, j), &g, conv, l_max, rule.sampling()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NeedletFrame { frame: FrameSpec::from_scales(g, conv, 2.0, 0.0, l_max, scales), cut_degrees })
}

/// Scale window whose dyadic sums are complete for `1 ≤ l ≤ l_max`.
pub fn needlet_window(l_max: usize, conv: Convention) -> Result<(i32, i32)> {
    if l_max == 0 {
        return Err(invalid("l_max", "must be at least 1"));
    }
    // g(2^j ν) ≠ 0 only for 1/2 < 2^j ν < 2.
    let j_max = -(libm::floor(libm::log2(nu(conv, 1))) as i32);
    let j_min = -(libm::ceil(libm::log2(nu(conv, l_max))) as i32);
    Ok((j_min, j_max))
}

impl NeedletFrame {
    pub fn l_max(&self) -> usize {
        self.frame.l_max
    }

    /// `g(2^j ν_l) = 0` for every `l > l(j)` at every scale.
    pub fn support_ok(&self) -> bool {
        self.frame
            .scales
            .iter()
            .zip(&self.cut_degrees)
            .all(|(s, &(_, cut))| s.multiplier.iter().skip(cut + 1).all(|&m| m == 0.0))
    }

    /// Degrees `l ≥ 1` whose dyadic sum is complete inside the window.
    pub fn covered_degrees(&self) -> Option<(usize, usize)> {
        let (lo, hi) = self.frame.j_range();
        let conv = self.frame.convention;
        let ok = |l: usize| {
            let v = nu(conv, l);
            libm::ldexp(v, lo - 1) <= 0.5 && libm::ldexp(v, hi + 1) >= 2.0
        };
        let covered: Vec<usize> = (1..=self.l_max()).filter(|&l| ok(l)).collect();
        Some((*covered.first()?, *covered.last()?))
    }
}

/// Both sides of
/// `Σ_{a^{2(j−1)} > M/b} |f(b a^{2j})|² ≤ a²/(a²−1) e^{−2M}(M/2 + 1/4)` for `f(s) = s e^{−s}`.
pub fn tail_bound_lhs_rhs(m: f64, b: f64, a: f64) -> Result<(f64, f64)> {
    if !(m > 0.5) {
        return Err(invalid("M", "must exceed 1/2"));
    }
    if !(b > 0.0) {
        return Err(invalid("b", "must be positive"));
    }
    if !(a > 1.0) {
        return Err(invalid("a", "must exceed 1"));
    }
    let a2 = a * a;
    let ln_a2 = libm::log(a2);
    let thr = m / b;
    let mut j = libm::floor(libm::log(thr) / ln_a2) as i64;
    while libm::pow(a2, (j - 1) as f64) > thr {
        j -= 1;
    }
    while libm::pow(a2, (j - 1) as f64) <= thr {
        j += 1;
    }
    let f = SpectralFilter::Mexican(1);
    let mut lhs = 0.0;
    loop {
        let v = f.eval(b * libm::pow(a2, j as f64));
        let t = v * v;
        lhs += t;
        if t <= 1e-30 * lhs || t == 0.0 {
            break;
        }
        j += 1;
    }
    let rhs = a2 / (a2 - 1.0) * libm::exp(-2.0 * m) * (0.5 * m + 0.25);
    Ok((lhs, rhs))
}

/// Root `m` of `a^{2m} l(l+1) = N + r·m₋` with `m₋ = max(−m, 0)`.
pub fn crossing_index(big_n: f64, r: f64, l: usize, a: f64) -> Result<f64> {
    if !(big_n >= 1.0) {
        return Err(invalid("N", "must be at least 1"));
    }
    if !(r >= 1.0) {
        return Err(invalid("r", "must be at least 1"));
    }
    if l < 1 {
        return Err(invalid("l", "must be at least 1"));
    }
    if !(a > 1.0) {
        return Err(invalid("a", "must exceed 1"));
    }
    let ll = (l * (l + 1)) as f64;
    let ln_a = libm::log(a);
    let h = |m: f64| libm::exp(2.0 * m * ln_a) * ll - big_n - r * (-m).max(0.0);
    let p = 0.5 * libm::log(big_n / ll) / ln_a;
    if p >= 0.0 {
        return Ok(p);
    }
    // h(p) ≤ 0 and h(0) = l(l+1) − N ≥ 0.
    Ok(bisect(h, p, 0.0, 1e-12))
}

/// The printed bracket `[½ log_a(N/[l(l+1)]), ½ log_a(rN/l)]`.
pub fn crossing_bracket(big_n: f64, r: f64, l: usize, a: f64) -> (f64, f64) {
    let ln_a = libm::log(a);
    let lf = l as f64;
    (0.5 * libm::log(big_n / (lf * (lf + 1.0))) / ln_a, 0.5 * libm::log(r * big_n / lf) / ln_a)
}

/// `r = max(1, 8 ln a)`.
pub fn hybrid_r(a: f64) -> f64 {
    (8.0 * libm::log(a)).max(1.0)
}

/// Least integer strictly greater than `√(N + r(j−1)₋) / a^{j−1}`.
pub fn hybrid_cut_degree(j: i32, big_n: f64, a: f64) -> Result<u64> {
    if !(big_n >= 1.0) {
        return Err(invalid("N", "must be at least 1"));
    }
    if !(a > 1.0) {
        return Err(invalid("a", "must exceed 1"));
    }
    let neg = (1 - j).max(0) as f64;
    let x = libm::sqrt(big_n + hybrid_r(a) * neg) / libm::pow(a, (j - 1) as f64);
    if x >= 1.8e19 {
        return Err(invalid("j", "cut degree does not fit in 64 bits"));
    }
    Ok(libm::floor(x) as u64 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HybridDiagnostics {
    pub big_n: f64,
    pub a: f64,
    pub l_max: usize,
    pub r: f64,
    pub eps3: f64,
    pub eps4: f64,
    /// `ε₃ / (e^{−N} N)`.
    pub ratio3: f64,
    /// `ε₄ / (e^{−N} N⁵)`.
    pub ratio4: f64,
}

fn upper_tail(a2: f64, s: f64, mut j: i64) -> f64 {
    let f = SpectralFilter::Mexican(1);
    let mut sum = 0.0;
    loop {
        let v = f.eval(libm::pow(a2, j as f64) * s);
        let t = v * v;
        sum += t;
        if t == 0.0 || t <= 1e-30 * sum {
            return sum;
        }
        j += 1;
    }
}

/// Grid points per period of `s ↦ a² s` in the `ε₃` maximization.
pub const EPS3_GRID: usize = 1000;

/// `ε₃ = max_s Σ_{a^{2j} > N a²/s} |f(a^{2j}s)|²` and
/// `ε₄ = Σ_{l ≤ l_max} (2l+1) Σ_{a^{2(j−1)} l(l+1) > N + r(j−1)₋} |f(a^{2j} l(l+1))|²`
/// for `f(s) = s e^{−s}`.
pub fn hybrid_tail_diagnostics(big_n: f64, a: f64, l_max: usize) -> Result<HybridDiagnostics> {
    if !(big_n >= 1.0) {
        return Err(invalid("N", "must be at least 1"));
    }
    if !(a > 1.0) {
        return Err(invalid("a", "must exceed 1"));
    }
    let a2 = a * a;
    let ln_a2 = libm::log(a2);
    let thr = big_n * a2;
    // The inner sum is invariant under s ↦ a² s, so one period suffices.
    let mut eps3: f64 = 0.0;
    for i in 0..EPS3_GRID {
        let s = libm::exp(ln_a2 * i as f64 / EPS3_GRID as f64);
        let mut j = libm::floor(libm::log(thr / s) / ln_a2) as i64 - 1;
        while libm::pow(a2, j as f64) <= thr / s {
            j += 1;
        }
        eps3 = eps3.max(upper_tail(a2, s, j));
    }
    let r = hybrid_r(a);
    let mut eps4 = 0.0;
    for l in 1..=l_max {
        let ll = (l * (l + 1)) as f64;
        let cond = |j: i64| libm::pow(a2, (j - 1) as f64) * ll > big_n + r * (1 - j).max(0) as f64;
        let m = crossing_index(big_n, r, l, a)?;
        let mut j = libm::floor(m) as i64;
        while cond(j) {
            j -= 1;
        }
        while !cond(j) {
            j += 1;
        }
        eps4 += (2 * l + 1) as f64 * upper_tail(a2, ll, j);
    }
    let e = libm::exp(-big_n);
    Ok(HybridDiagnostics {
        big_n,
        a,
        l_max,
        r,
        eps3,
        eps4,
        ratio3: eps3 / (e * big_n),
        ratio4: eps4 / (e * libm::pow(big_n, 5.0)),
    })
}
