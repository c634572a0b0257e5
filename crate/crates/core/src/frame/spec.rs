use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::partition::{build_partition, ScalePartition};
use crate::spectral::{daubechies_sum, dyadic_argument, sphere_eigenvalue, Convention, SpectralFilter};

use super::Sampling;

/// One scale of a frame: the spectral multiplier `m_j(l)` and the weighted
/// points `(x_{j,k}, μ_{j,k})`. The frame element has coefficients
/// `μ^{1/2} m_j(l) Y_{lq}(x_{j,k})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scale {
    pub j: i32,
    /// Scale parameter `t` with `m_j(l) = f(arg(t, l))`.
    pub t: f64,
    pub multiplier: Vec<f64>,
    pub sampling: Sampling,
}

impl Scale {
    pub fn new(j: i32, t: f64, filter: &SpectralFilter, conv: Convention, l_max: usize, sampling: Sampling) -> Self {
        let multiplier = (0..=l_max).map(|l| filter.at_degree(conv, t, l)).collect();
        Scale { j, t, multiplier, sampling }
    }

    /// Highest degree with a nonzero multiplier.
    pub fn band_limit(&self) -> usize {
        self.multiplier.iter().rposition(|&m| m != 0.0).unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.sampling.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sampling.is_empty()
    }
}

/// Frame `{φ_{j,k}}` over a finite scale window, with all arithmetic carried
/// out for degrees `l ≤ l_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSpec {
    pub filter: SpectralFilter,
    pub convention: Convention,
    pub a: f64,
    pub b: f64,
    pub l_max: usize,
    pub scales: Vec<Scale>,
}

/// Convention matching the dyadic sums of [`crate::spectral::daubechies_sum`].
pub fn frame_convention(filter: &SpectralFilter) -> Convention {
    if filter.order() == 2 {
        Convention::Laplacian
    } else {
        Convention::SqrtLaplacian
    }
}

impl FrameSpec {
    /// Frame on latitude-band partitions with cell diameters `≤ b·a^j`.
    pub fn new(filter: SpectralFilter, a: f64, b: f64, j_range: (i32, i32), l_max: usize) -> Result<Self> {
        let (j_min, j_max) = j_range;
        if j_min > j_max {
            return Err(invalid("j_range", "j_min must not exceed j_max"));
        }
        let conv = frame_convention(&filter);
        let scales = (j_min..=j_max)
            .map(|j| {
                let part = build_partition(j, a, b)?;
                Ok(Scale::new(j, libm::pow(a, j as f64), &filter, conv, l_max, part.sampling()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FrameSpec { filter, convention: conv, a, b, l_max, scales })
    }

    pub fn from_scales(
        filter: SpectralFilter,
        convention: Convention,
        a: f64,
        b: f64,
        l_max: usize,
        scales: Vec<Scale>,
    ) -> Self {
        FrameSpec { filter, convention, a, b, l_max, scales }
    }

    pub fn j_range(&self) -> (i32, i32) {
        let lo = self.scales.iter().map(|s| s.j).min().unwrap_or(0);
        let hi = self.scales.iter().map(|s| s.j).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn scale(&self, j: i32) -> Option<&Scale> {
        self.scales.iter().find(|s| s.j == j)
    }

    pub fn element_count(&self) -> usize {
        self.scales.iter().map(Scale::len).sum()
    }

    /// The band partition behind scale `j` (rebuilt on demand).
    pub fn partition(&self, j: i32) -> Result<ScalePartition> {
        let (lo, hi) = self.j_range();
        if j < lo || j > hi {
            return Err(Error::ScaleOutOfRange { lo: j, hi: j });
        }
        build_partition(j, self.a, self.b)
    }

    /// `Σ_j m_j(l)²`, the diagonal of the limiting operator at degree `l`.
    pub fn multiplier_energy(&self, l: usize) -> f64 {
        self.scales.iter().map(|s| s.multiplier[l] * s.multiplier[l]).sum()
    }
}

fn tail_sum<I: Iterator<Item = i64>>(filter: &SpectralFilter, a: f64, lam: f64, js: I, g: f64) -> f64 {
    let mut sum = 0.0;
    let mut small = 0;
    for j in js {
        let v = filter.eval(dyadic_argument(filter, a, lam, j));
        let t = v * v;
        sum += t;
        if t <= 1e-30 * g {
            small += 1;
            if small > 4 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// Smallest window `[j_min, j_max]` with `g_{M,N}(λ_l) ≥ (1 − eps) g(λ_l)` for
/// every `1 ≤ l ≤ l_max`; `eps` is split evenly between the two tails.
pub fn adequate_window(filter: &SpectralFilter, a: f64, l_max: usize, eps: f64) -> Result<(i32, i32)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid("eps", "must lie in (0, 1)"));
    }
    if l_max == 0 {
        return Err(invalid("l_max", "must be at least 1"));
    }
    let mut j_min = i64::MAX;
    let mut j_max = i64::MIN;
    for l in 1..=l_max {
        let lam = sphere_eigenvalue(l);
        let g = daubechies_sum(filter, a, lam)?;
        let budget = 0.5 * eps * g;
        // Start from the scale whose argument is closest to the filter peak.
        let ln_a = libm::log(a);
        let peak = if filter.order() == 2 {
            libm::log(filter.peak() / lam) / (2.0 * ln_a)
        } else {
            libm::log(filter.peak() / libm::sqrt(lam)) / ln_a
        };
        let j0 = libm::round(peak) as i64;
        let mut n = j0;
        while tail_sum(filter, a, lam, (n + 1).., g) > budget {
            n += 1;
        }
        let mut m = j0;
        while tail_sum(filter, a, lam, (i64::MIN..m).rev(), g) > budget {
            m -= 1;
        }
        j_max = j_max.max(n);
        j_min = j_min.min(m);
    }
    Ok((j_min as i32, j_max as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::truncated_daubechies_sum;

    #[test]
    fn window_meets_its_target() {
        let f = SpectralFilter::Mexican(1);
        let a = libm::cbrt(2.0);
        for eps in [2e-3, 1e-6] {
            let (lo, hi) = adequate_window(&f, a, 32, eps).unwrap();
            for l in 1..=32 {
                let lam = sphere_eigenvalue(l);
                let g = daubechies_sum(&f, a, lam).unwrap();
                let part = truncated_daubechies_sum(&f, a, lam, -(lo as i64), hi as i64).unwrap();
                assert!(part >= (1.0 - eps) * g);
            }
            // Minimality: shrinking either end breaks the target somewhere.
            let worst = |lo: i32, hi: i32| {
                (1..=32)
                    .map(|l| {
                        let lam = sphere_eigenvalue(l);
                        let g = daubechies_sum(&f, a, lam).unwrap();
                        truncated_daubechies_sum(&f, a, lam, -(lo as i64), hi as i64).unwrap() / g
                    })
                    .fold(1.0, f64::min)
            };
            assert!(worst(lo + 1, hi) < 1.0 - 0.5 * eps || worst(lo, hi - 1) < 1.0 - 0.5 * eps);
        }
    }

    #[test]
    fn multipliers_follow_convention() {
        let spec = FrameSpec::new(SpectralFilter::Mexican(1), 2.0, 0.5, (-1, 1), 6).unwrap();
        let s = spec.scale(-1).unwrap();
        assert_eq!(s.multiplier[0], 0.0);
        let arg = 0.25 * 12.0;
        assert!((s.multiplier[3] - arg * libm::exp(-arg)).abs() < 1e-15);
        assert!((spec.scale(0).unwrap().sampling.total_weight() - 4.0 * core::f64::consts::PI).abs() < 1e-12);
    }
}
