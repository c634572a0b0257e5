use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// How a filter is applied to the spectrum of the Laplacian on S².
///
/// At scale `t` and degree `l` the filter argument is `t²·l(l+1)`
/// ([`Laplacian`](Convention::Laplacian)), `t·l` ([`Degree`](Convention::Degree))
/// or `t·√(l(l+1))` ([`SqrtLaplacian`](Convention::SqrtLaplacian)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Laplacian,
    Degree,
    SqrtLaplacian,
}

impl Convention {
    pub fn argument(self, t: f64, l: usize) -> f64 {
        let lf = l as f64;
        match self {
            Convention::Laplacian => t * t * lf * (lf + 1.0),
            Convention::Degree => t * lf,
            Convention::SqrtLaplacian => t * libm::sqrt(lf * (lf + 1.0)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Laplacian => "laplacian",
            Convention::Degree => "degree",
            Convention::SqrtLaplacian => "sqrt_laplacian",
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplacian" => Ok(Convention::Laplacian),
            "degree" => Ok(Convention::Degree),
            "sqrt_laplacian" => Ok(Convention::SqrtLaplacian),
            _ => Err(Error::InvalidParameter {
                name: "convention",
                reason: "expected laplacian, degree or sqrt_laplacian",
            }),
        }
    }
}

/// A spectral filter `f` on `[0, ∞)`.
///
/// `Mexican(r)` is `s^r e^{-s}`, a filter of `t²Δ`. The two cutoff kinds are
/// supported in `[1/2, 2]` and act on a first-order variable (`t·l` or
/// `t√Δ`); `NormalizedCutoff` satisfies `Σ_j g(2^j s)² = 1` for every `s > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralFilter {
    Mexican(u32),
    CutoffBump,
    NormalizedCutoff,
}

/// `exp(-1/[9/16 - (s - 5/4)²])` on `(1/2, 2)`, zero elsewhere.
pub fn cutoff_bump(s: f64) -> f64 {
    if s <= 0.5 || s >= 2.0 {
        return 0.0;
    }
    let d = s - 1.25;
    let gap = 0.5625 - d * d;
    if gap <= 0.0 {
        0.0
    } else {
        libm::exp(-1.0 / gap)
    }
}

fn normalized_cutoff(s: f64) -> f64 {
    let psi = cutoff_bump(s);
    if psi == 0.0 {
        return 0.0;
    }
    let mut norm = 0.0;
    for j in -2..=2 {
        let v = cutoff_bump(libm::ldexp(s, j));
        norm += v * v;
    }
    psi / libm::sqrt(norm)
}

impl SpectralFilter {
    pub fn mexican(r: u32) -> Self {
        SpectralFilter::Mexican(r)
    }

    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            SpectralFilter::Mexican(r) => {
                if s == 0.0 {
                    return if r == 0 { 1.0 } else { 0.0 };
                }
                if s > 745.0 + 2.0 * r as f64 * libm::log(s.max(1.0)) {
                    return 0.0;
                }
                libm::pow(s, r as f64) * libm::exp(-s)
            }
            SpectralFilter::CutoffBump => cutoff_bump(s),
            SpectralFilter::NormalizedCutoff => normalized_cutoff(s),
        }
    }

    /// The `l` in `f(s) = s^l f₀(s)`. `None` when `f` vanishes on a whole
    /// neighbourhood of `0` (any order works).
    pub fn vanishing_order(&self) -> Option<u32> {
        match *self {
            SpectralFilter::Mexican(r) => Some(r),
            _ => None,
        }
    }

    /// Closed support `[lo, hi]`; `hi = ∞` for the Mexican family.
    pub fn support(&self) -> (f64, f64) {
        match self {
            SpectralFilter::Mexican(_) => (0.0, f64::INFINITY),
            _ => (0.5, 2.0),
        }
    }

    /// Location of the single interior maximum of `f`.
    pub fn peak(&self) -> f64 {
        match *self {
            SpectralFilter::Mexican(r) => r as f64,
            _ => 1.25,
        }
    }

    /// 2 for filters of `t²Δ`, 1 for filters of a first-order variable.
    pub fn order(&self) -> u32 {
        match self {
            SpectralFilter::Mexican(_) => 2,
            _ => 1,
        }
    }

    pub fn natural_convention(&self) -> Convention {
        match self {
            SpectralFilter::Mexican(_) => Convention::Laplacian,
            _ => Convention::Degree,
        }
    }

    pub fn is_mexican(&self, r: u32) -> bool {
        *self == SpectralFilter::Mexican(r)
    }

    /// Filter value at degree `l` and scale `t` under `conv`.
    pub fn at_degree(&self, conv: Convention, t: f64, l: usize) -> f64 {
        self.eval(conv.argument(t, l))
    }

    /// `‖f₀‖_∞` where `f(s) = s^l f₀(s)`.
    pub fn f0_sup(&self, l: u32) -> f64 {
        match *self {
            SpectralFilter::Mexican(r) if l <= r => {
                let k = (r - l) as f64;
                if k == 0.0 {
                    1.0
                } else {
                    libm::pow(k / core::f64::consts::E, k)
                }
            }
            // f₀(s) = s^{r-l} e^{-s} is unbounded at 0.
            SpectralFilter::Mexican(_) => f64::INFINITY,
            _ => {
                let f = |s: f64| self.eval(s) / libm::pow(s, l as f64);
                crate::numeric::scan_max(f, 0.5, 2.0, 512, 1e-12).1
            }
        }
    }
}

impl fmt::Display for SpectralFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralFilter::Mexican(r) => write!(f, "mexican:r={r}"),
            SpectralFilter::CutoffBump => f.write_str("cutoff"),
            SpectralFilter::NormalizedCutoff => f.write_str("normalized_cutoff"),
        }
    }
}

impl FromStr for SpectralFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "cutoff" | "cutoff_bump" => return Ok(SpectralFilter::CutoffBump),
            "normalized_cutoff" => return Ok(SpectralFilter::NormalizedCutoff),
            "mexican" => return Ok(SpectralFilter::Mexican(1)),
            _ => {}
        }
        let unknown = || Error::UnknownFilter(String::from(s));
        let rest = s.strip_prefix("mexican:").ok_or_else(unknown)?;
        let value = rest.trim().strip_prefix("r=").ok_or_else(unknown)?;
        value
            .trim()
            .parse::<u32>()
            .map(SpectralFilter::Mexican)
            .map_err(|_| Error::UnknownFilter(format!("{s} (r must be a non-negative integer)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_forms() {
        let m1 = SpectralFilter::Mexican(1);
        assert_eq!(m1.eval(0.0), 0.0);
        assert!((m1.eval(1.0) - 0.367_879_441_171_442_3).abs() < 1e-15);
        assert_eq!(SpectralFilter::CutoffBump.eval(0.5), 0.0);
        assert_eq!(SpectralFilter::CutoffBump.eval(2.0), 0.0);
        assert!((SpectralFilter::CutoffBump.eval(1.25) - libm::exp(-16.0 / 9.0)).abs() < 1e-16);
        assert_eq!(m1.eval(1e6), 0.0);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["mexican:r=1", "mexican:r=3", "cutoff", "normalized_cutoff"] {
            let f: SpectralFilter = s.parse().unwrap();
            assert_eq!(format!("{f}"), s);
        }
        assert!("gauss".parse::<SpectralFilter>().is_err());
        assert!("mexican:r=x".parse::<SpectralFilter>().is_err());
    }

    #[test]
    fn f0_sup_mexican() {
        assert_eq!(SpectralFilter::Mexican(1).f0_sup(1), 1.0);
        assert!((SpectralFilter::Mexican(2).f0_sup(1) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(SpectralFilter::Mexican(1).f0_sup(2).is_infinite());
    }

    proptest! {
        #[test]
        fn normalized_cutoff_partition_of_unity(u in -20.0f64..20.0) {
            let s = libm::exp2(u);
            let total: f64 = (-30..=30)
                .map(|j| SpectralFilter::NormalizedCutoff.eval(libm::ldexp(s, j)).powi(2))
                .sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        #[test]
        fn cutoff_support(s in 0.0f64..10.0) {
            let v = SpectralFilter::CutoffBump.eval(s);
            if s <= 0.5 || s >= 2.0 {
                prop_assert_eq!(v, 0.0);
            } else {
                prop_assert!(v > 0.0);
            }
        }

        #[test]
        fn mexican_rapid_decay(s in 1e-3f64..200.0, r in 1u32..4) {
            // f(s) ≤ M_J s^{-J} with M_J = ((J + r)/e)^{J + r}, J = 3.
            let f = SpectralFilter::Mexican(r);
            let j = 3.0;
            let k = j + r as f64;
            let m_j = libm::pow(k / core::f64::consts::E, k);
            prop_assert!(f.eval(s) > 0.0 || s > 700.0);
            prop_assert!(f.eval(s) <= m_j * libm::pow(s, -j) * (1.0 + 1e-12));
        }
    }
}
