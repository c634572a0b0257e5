//! Latitude-band partition: two polar caps and equal-height bands cut into
//! equal-longitude cells.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::frame::Sampling;
use crate::geometry::{from_angles, Vec3};

use super::{Cell, CellGeometry};

/// Relative and absolute slack added to closed-form diameters.
const DIAM_REL: f64 = 1e-12;
const DIAM_ABS: f64 = 1e-15;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Band {
    pub theta0: f64,
    pub theta1: f64,
    pub n: usize,
    pub diameter_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BandLayout {
    pub cap_radius: f64,
    pub bands: Vec<Band>,
}

fn sinusoid_min(a: f64, b: f64) -> f64 {
    // Minimizer of a cos δ + b sin δ on the circle.
    libm::atan2(-b, -a)
}

/// Certified upper bound on the geodesic diameter of the cell
/// `[θ0, θ1] × [φ, φ + dphi]` with `dphi ≤ π`.
///
/// For two points with `δ = θa − θb ≥ 0`, `σ = θa + θb` and longitude gap
/// `Δ`, `cos D = cos δ (1+cos Δ)/2 + cos σ (1−cos Δ)/2`. The worst case takes
/// `Δ = dphi` and `σ` as close to `π` as the band allows; the remaining 1-d
/// minimization over `δ ∈ [0, θ1−θ0]` is piecewise sinusoidal and is solved
/// exactly over its breakpoints and stationary points.
pub fn rect_diameter(theta0: f64, theta1: f64, dphi: f64) -> f64 {
    let h = theta1 - theta0;
    let u = libm::cos(dphi.min(PI));
    let alpha = 0.5 * (1.0 + u);
    let beta = 0.5 * (1.0 - u);
    let value = |delta: f64| {
        let (lo, hi) = (2.0 * theta0 + delta, 2.0 * theta1 - delta);
        let sigma = if PI <= lo {
            lo
        } else if PI >= hi {
            hi
        } else {
            PI
        };
        alpha * libm::cos(delta) + beta * libm::cos(sigma)
    };
    let mut candidates = [0.0, h, 2.0 * theta1 - PI, PI - 2.0 * theta0, 0.0, 0.0];
    // σ = 2θ1 − δ: (α + β cos 2θ1) cos δ + β sin 2θ1 sin δ.
    let c1 = 2.0 * theta1;
    candidates[4] = sinusoid_min(alpha + beta * libm::cos(c1), beta * libm::sin(c1));
    // σ = 2θ0 + δ: (α + β cos 2θ0) cos δ − β sin 2θ0 sin δ.
    let c0 = 2.0 * theta0;
    candidates[5] = sinusoid_min(alpha + beta * libm::cos(c0), -beta * libm::sin(c0));
    let mut min_cos = f64::INFINITY;
    for d in candidates {
        for shift in [0.0, 2.0 * PI, -2.0 * PI] {
            let d = d + shift;
            if (0.0..=h).contains(&d) {
                min_cos = min_cos.min(value(d));
            }
        }
    }
    let diameter = libm::acos(min_cos.clamp(-1.0, 1.0));
    (diameter * (1.0 + DIAM_REL) + DIAM_ABS).min(PI)
}

impl BandLayout {
    pub fn build(target: f64) -> Self {
        let cap_radius = 0.5 * target;
        let span = PI - target;
        let n_bands = libm::ceil(span / (target / SQRT_2)).max(1.0) as usize;
        let h = span / n_bands as f64;
        let bands = (0..n_bands)
            .map(|i| {
                let theta0 = cap_radius + h * i as f64;
                let theta1 = if i + 1 == n_bands { PI - cap_radius } else { cap_radius + h * (i + 1) as f64 };
                let fits = |n: usize| rect_diameter(theta0, theta1, 2.0 * PI / n as f64) <= target;
                // Diameter grows with the longitude gap: bracket, then bisect.
                let mut hi = 2usize;
                while !fits(hi) {
                    hi *= 2;
                }
                let mut lo = hi / 2;
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if fits(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                let n = hi.max(2);
                Band { theta0, theta1, n, diameter_bound: rect_diameter(theta0, theta1, 2.0 * PI / n as f64) }
            })
            .collect();
        BandLayout { cap_radius, bands }
    }

    pub fn len(&self) -> usize {
        2 + self.bands.iter().map(|b| b.n).sum::<usize>()
    }

    fn cap_measure(&self) -> f64 {
        let s = libm::sin(0.5 * self.cap_radius);
        4.0 * PI * s * s
    }

    fn band_cell_measure(b: &Band) -> f64 {
        // cos θ0 − cos θ1 = 2 sin((θ0+θ1)/2) sin((θ1−θ0)/2)
        let dz = 2.0 * libm::sin(0.5 * (b.theta0 + b.theta1)) * libm::sin(0.5 * (b.theta1 - b.theta0));
        2.0 * PI * dz / b.n as f64
    }

    fn band_center_cos(b: &Band) -> f64 {
        0.5 * (libm::cos(b.theta0) + libm::cos(b.theta1))
    }

    pub fn cell(&self, k: usize) -> Cell {
        let last = self.len() - 1;
        if k == 0 || k == last {
            let north = k == 0;
            return Cell {
                center: [0.0, 0.0, if north { 1.0 } else { -1.0 }],
                measure: self.cap_measure(),
                diameter_bound: 2.0 * self.cap_radius,
                geometry: CellGeometry::Cap { north, radius: self.cap_radius },
            };
        }
        let mut rest = k - 1;
        for b in &self.bands {
            if rest < b.n {
                let width = 2.0 * PI / b.n as f64;
                let phi0 = width * rest as f64;
                let z = Self::band_center_cos(b);
                let theta = libm::acos(z);
                return Cell {
                    center: from_angles(theta, phi0 + 0.5 * width),
                    measure: Self::band_cell_measure(b),
                    diameter_bound: b.diameter_bound,
                    geometry: CellGeometry::Rect {
                        theta0: b.theta0,
                        theta1: b.theta1,
                        phi0,
                        phi1: phi0 + width,
                    },
                };
            }
            rest -= b.n;
        }
        unreachable!("cell index checked by caller")
    }

    pub fn locate(&self, x: &Vec3) -> usize {
        let (theta, phi) = crate::geometry::to_angles(x);
        if theta <= self.cap_radius {
            return 0;
        }
        if theta > PI - self.cap_radius {
            return self.len() - 1;
        }
        let nb = self.bands.len();
        let h = self.bands[0].theta1 - self.bands[0].theta0;
        let mut i = (libm::floor((theta - self.cap_radius) / h) as usize).min(nb - 1);
        while i > 0 && theta <= self.bands[i].theta0 {
            i -= 1;
        }
        while i + 1 < nb && theta > self.bands[i].theta1 {
            i += 1;
        }
        let b = &self.bands[i];
        let width = 2.0 * PI / b.n as f64;
        let mut k = (libm::floor(phi / width) as usize).min(b.n - 1);
        if k > 0 && phi <= width * k as f64 {
            k -= 1;
        }
        1 + self.bands[..i].iter().map(|b| b.n).sum::<usize>() + k
    }

    pub fn sampling(&self) -> Sampling {
        let mut s = Sampling::new();
        let cap = self.cap_measure();
        s.push(1.0, 0.0, 0.0, 1, cap);
        for b in &self.bands {
            let z = Self::band_center_cos(b);
            let width = 2.0 * PI / b.n as f64;
            s.push(z, libm::sqrt((1.0 - z * z).max(0.0)), 0.5 * width, b.n, Self::band_cell_measure(b));
        }
        s.push(-1.0, 0.0, 0.0, 1, cap);
        s
    }

    pub fn min_measure(&self) -> f64 {
        self.bands.iter().map(Self::band_cell_measure).fold(self.cap_measure(), f64::min)
    }

    pub fn max_diameter(&self) -> f64 {
        self.bands.iter().map(|b| b.diameter_bound).fold(2.0 * self.cap_radius, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geodesic;
    use proptest::prelude::*;

    fn brute_diameter(theta0: f64, theta1: f64, dphi: f64) -> f64 {
        let n = 24;
        let mut best: f64 = 0.0;
        let pts: Vec<Vec3> = (0..=n)
            .flat_map(|i| {
                let th = theta0 + (theta1 - theta0) * i as f64 / n as f64;
                (0..=n).map(move |k| from_angles(th, dphi * k as f64 / n as f64))
            })
            .collect();
        for p in &pts {
            for q in &pts {
                best = best.max(geodesic(p, q));
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn closed_form_dominates_brute_force(t0 in 0.0f64..3.1, h in 0.001f64..1.0, dphi in 0.001f64..PI) {
            let t1 = (t0 + h).min(PI);
            let cert = rect_diameter(t0, t1, dphi);
            let brute = brute_diameter(t0, t1, dphi);
            prop_assert!(cert >= brute - 1e-12);
            // Tight: the brute-force grid includes the extreme corners and edges
            // up to grid resolution.
            prop_assert!(cert <= brute + 0.05 * h.max(dphi));
        }
    }

    #[test]
    fn symmetric_band_across_equator() {
        // Opposite corners straddling the equator.
        let d = rect_diameter(1.2, 1.9, 0.4);
        let corner = geodesic(&from_angles(1.2, 0.0), &from_angles(1.9, 0.4));
        assert!(d >= corner);
    }
}
