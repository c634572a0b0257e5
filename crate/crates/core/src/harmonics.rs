//! Real orthonormal spherical harmonics.
//!
//! `Y_{l0} = P̄_{l0}(cos θ)`, `Y_{lm} = √2 P̄_{lm}(cos θ) cos mφ` and
//! `Y_{l,-m} = √2 P̄_{lm}(cos θ) sin mφ` for `m ≥ 1`, where `P̄_{lm}` are the
//! associated Legendre functions normalized so that `∫ Y² dμ = 1` (no
//! Condon–Shortley phase). Coefficients are stored at `l² + l + q`.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::geometry::{to_angles, Vec3};

pub fn index(l: usize, q: i64) -> usize {
    ((l * l + l) as i64 + q) as usize
}

/// Number of real harmonics of degree at most `l_max`.
pub fn count(l_max: usize) -> usize {
    (l_max + 1) * (l_max + 1)
}

/// Position of `P̄_{lm}` in the triangular table.
pub fn tri_index(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Triangular table of `P̄_{lm}(x)` for `0 ≤ m ≤ l ≤ l_max`, with
/// `x = cos θ` and `s = sin θ ≥ 0` passed separately for accuracy.
pub fn normalized_legendre(l_max: usize, x: f64, s: f64) -> Vec<f64> {
    let mut out = alloc::vec![0.0; tri_index(l_max, l_max) + 1];
    normalized_legendre_into(l_max, x, s, &mut out);
    out
}

pub fn normalized_legendre_into(l_max: usize, x: f64, s: f64, out: &mut [f64]) {
    LegendreTable::new(l_max).fill(x, s, out);
}

/// Precomputed recurrence coefficients for [`normalized_legendre`], reused
/// across many evaluation latitudes.
#[derive(Clone, Debug)]
pub struct LegendreTable {
    l_max: usize,
    diag: Vec<f64>,
    sub: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl LegendreTable {
    pub fn new(l_max: usize) -> Self {
        let size = tri_index(l_max, l_max) + 1;
        let mut a = alloc::vec![0.0; size];
        let mut b = alloc::vec![0.0; size];
        let mut diag = alloc::vec![0.0; l_max + 1];
        let mut sub = alloc::vec![0.0; l_max + 1];
        for m in 0..=l_max {
            let mf = m as f64;
            diag[m] = if m == 0 { 0.0 } else { libm::sqrt((2.0 * mf + 1.0) / (2.0 * mf)) };
            sub[m] = libm::sqrt(2.0 * mf + 3.0);
            for l in (m + 2)..=l_max {
                let lf = l as f64;
                let lm1 = lf - 1.0;
                a[tri_index(l, m)] = libm::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
                b[tri_index(l, m)] = libm::sqrt((lm1 * lm1 - mf * mf) / (4.0 * lm1 * lm1 - 1.0));
            }
        }
        LegendreTable { l_max, diag, sub, a, b }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Fill `out[tri_index(l, m)]` with `P̄_{lm}(x)` for `l ≤ l_max`.
    pub fn fill(&self, x: f64, s: f64, out: &mut [f64]) {
        let l_max = self.l_max;
        let mut pmm = 0.5 / libm::sqrt(PI);
        for m in 0..=l_max {
            if m > 0 {
                pmm *= self.diag[m] * s;
            }
            let base = tri_index(m, m);
            out[base] = pmm;
            if m == l_max {
                break;
            }
            let mut p_prev = pmm;
            let mut p_cur = self.sub[m] * x * pmm;
            out[tri_index(m + 1, m)] = p_cur;
            for l in (m + 2)..=l_max {
                let i = tri_index(l, m);
                let p_next = self.a[i] * (x * p_cur - self.b[i] * p_prev);
                out[i] = p_next;
                p_prev = p_cur;
                p_cur = p_next;
            }
        }
    }
}

/// All `Y_{lq}(θ, φ)` for `l ≤ l_max`, indexed by [`index`].
pub fn real_harmonics_angles(l_max: usize, theta: f64, phi: f64) -> Vec<f64> {
    let p = normalized_legendre(l_max, libm::cos(theta), libm::sin(theta));
    let mut out = alloc::vec![0.0; count(l_max)];
    for m in 0..=l_max {
        let (c, s) = if m == 0 {
            (1.0, 0.0)
        } else {
            let mf = m as f64;
            (SQRT_2 * libm::cos(mf * phi), SQRT_2 * libm::sin(mf * phi))
        };
        for l in m..=l_max {
            let v = p[tri_index(l, m)];
            out[index(l, m as i64)] = v * c;
            if m > 0 {
                out[index(l, -(m as i64))] = v * s;
            }
        }
    }
    out
}

pub fn real_harmonics(l_max: usize, x: &Vec3) -> Vec<f64> {
    let (theta, phi) = to_angles(x);
    real_harmonics_angles(l_max, theta, phi)
}

/// `Σ c_{lq} Y_{lq}(x)` for a coefficient vector of degree `l_max`.
pub fn evaluate(coeffs: &[f64], l_max: usize, x: &Vec3) -> f64 {
    let (theta, phi) = to_angles(x);
    let p = normalized_legendre(l_max, libm::cos(theta), libm::sin(theta));
    ring_evaluate(coeffs, l_max, &p, phi)
}

/// Evaluate at longitude `phi` given the Legendre table of the ring.
pub(crate) fn ring_evaluate(coeffs: &[f64], l_max: usize, p: &[f64], phi: f64) -> f64 {
    let mut total = 0.0;
    let (s1, c1) = (libm::sin(phi), libm::cos(phi));
    let (mut cm, mut sm) = (1.0, 0.0);
    for m in 0..=l_max {
        let (mut alpha, mut beta) = (0.0, 0.0);
        for l in m..=l_max {
            let v = p[tri_index(l, m)];
            alpha += coeffs[index(l, m as i64)] * v;
            if m > 0 {
                beta += coeffs[index(l, -(m as i64))] * v;
            }
        }
        if m == 0 {
            total += alpha;
        } else {
            total += SQRT_2 * (alpha * cm + beta * sm);
        }
        let next_c = cm * c1 - sm * s1;
        sm = sm * c1 + cm * s1;
        cm = next_c;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::from_angles;
    use crate::numeric::gauss_legendre;
    use crate::spectral::legendre;

    #[test]
    fn low_degree_closed_forms() {
        let (t, p) = (0.7, 1.9);
        let y = real_harmonics_angles(2, t, p);
        let k0 = 0.5 / libm::sqrt(PI);
        let k1 = libm::sqrt(3.0 / (4.0 * PI));
        assert!((y[index(0, 0)] - k0).abs() < 1e-15);
        assert!((y[index(1, 0)] - k1 * libm::cos(t)).abs() < 1e-15);
        assert!((y[index(1, 1)] - k1 * libm::sin(t) * libm::cos(p)).abs() < 1e-15);
        assert!((y[index(1, -1)] - k1 * libm::sin(t) * libm::sin(p)).abs() < 1e-15);
        let k22 = 0.25 * libm::sqrt(15.0 / PI);
        let s2 = libm::sin(t) * libm::sin(t);
        assert!((y[index(2, 2)] - k22 * s2 * libm::cos(2.0 * p)).abs() < 1e-14);
    }

    #[test]
    fn zonal_matches_legendre() {
        for l in [0usize, 3, 17, 60] {
            for &x in &[-0.9, 0.0, 0.33, 1.0] {
                let s = libm::sqrt(1.0 - x * x);
                let p = normalized_legendre(l, x, s);
                let expected = libm::sqrt((2.0 * l as f64 + 1.0) / (4.0 * PI)) * legendre(l, x);
                assert!((p[tri_index(l, 0)] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn orthonormal_under_dense_quadrature() {
        let l_max = 6;
        let (nodes, weights) = gauss_legendre(l_max + 2);
        let n_phi = 2 * l_max + 3;
        let dim = count(l_max);
        let mut gram = alloc::vec![0.0; dim * dim];
        for (x, w) in nodes.iter().zip(&weights) {
            for k in 0..n_phi {
                let phi = 2.0 * PI * k as f64 / n_phi as f64;
                let y = real_harmonics_angles(l_max, libm::acos(*x), phi);
                let wk = w * 2.0 * PI / n_phi as f64;
                for i in 0..dim {
                    for j in 0..dim {
                        gram[i * dim + j] += wk * y[i] * y[j];
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((gram[i * dim + j] - e).abs() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn addition_theorem() {
        let l_max = 12;
        let x = from_angles(0.4, 2.0);
        let y = from_angles(1.9, 5.1);
        let yx = real_harmonics(l_max, &x);
        let yy = real_harmonics(l_max, &y);
        let cos_g = crate::geometry::dot(&x, &y);
        for l in 0..=l_max {
            let mut s = 0.0;
            for q in -(l as i64)..=(l as i64) {
                s += yx[index(l, q)] * yy[index(l, q)];
            }
            let expected = (2.0 * l as f64 + 1.0) / (4.0 * PI) * legendre(l, cos_g);
            assert!((s - expected).abs() < 1e-13, "l={l}");
        }
    }

    #[test]
    fn evaluate_matches_basis() {
        let l_max = 9;
        let x = from_angles(2.2, 0.6);
        let y = real_harmonics(l_max, &x);
        let coeffs: Vec<f64> = (0..count(l_max)).map(|i| libm::sin(i as f64)).collect();
        let direct: f64 = coeffs.iter().zip(&y).map(|(c, y)| c * y).sum();
        assert!((evaluate(&coeffs, l_max, &x) - direct).abs() < 1e-12);
    }
}
