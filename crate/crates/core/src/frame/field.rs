use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Result};
use crate::geometry::Vec3;
use crate::harmonics::{count, evaluate, index};

/// Band-limited real field on S², stored by real orthonormal harmonic
/// coefficients `c_{lq}` with `l ≤ l_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicField {
    l_max: usize,
    coeffs: Vec<f64>,
}

impl HarmonicField {
    pub fn zeros(l_max: usize) -> Self {
        HarmonicField { l_max, coeffs: alloc::vec![0.0; count(l_max)] }
    }

    pub fn from_coeffs(l_max: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != count(l_max) {
            return Err(invalid("coeffs", "length must be (l_max + 1)²"));
        }
        Ok(HarmonicField { l_max, coeffs })
    }

    /// The single harmonic `Y_{lq}`.
    pub fn single(l_max: usize, l: usize, q: i64) -> Self {
        let mut f = Self::zeros(l_max.max(l));
        f.set(l, q, 1.0);
        f
    }

    /// I.i.d. standard normal coefficients with `c_{00} = 0`, normalized to
    /// unit `L²` norm.
    pub fn random(l_max: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut coeffs: Vec<f64> = (0..count(l_max)).map(|_| StandardNormal.sample(rng)).collect();
        coeffs[0] = 0.0;
        let mut f = HarmonicField { l_max, coeffs };
        let n = f.norm();
        if n > 0.0 {
            f.scale(1.0 / n);
        }
        f
    }

    /// `count` random unit fields from one seeded stream.
    pub fn random_batch(l_max: usize, count: usize, seed: u64) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::random(l_max, &mut rng)).collect()
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn get(&self, l: usize, q: i64) -> f64 {
        if l > self.l_max {
            0.0
        } else {
            self.coeffs[index(l, q)]
        }
    }

    pub fn set(&mut self, l: usize, q: i64, value: f64) {
        self.coeffs[index(l, q)] = value;
    }

    pub fn is_mean_zero(&self) -> bool {
        self.coeffs[0] == 0.0
    }

    /// Remove the constant component `(I − P)F`.
    pub fn remove_mean(&mut self) {
        self.coeffs[0] = 0.0;
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sq())
    }

    /// `L²` inner product; fields of different band limits are padded with zeros.
    pub fn dot(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().min(other.coeffs.len());
        self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&mut self, c: f64) {
        self.coeffs.iter_mut().for_each(|x| *x *= c);
    }

    /// `self += c · other`, extending the band limit if needed.
    pub fn add_scaled(&mut self, other: &Self, c: f64) {
        if other.l_max > self.l_max {
            *self = self.with_l_max(other.l_max);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += c * b;
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.with_l_max(self.l_max.max(other.l_max));
        out.add_scaled(other, -1.0);
        out
    }

    /// Truncate or zero-pad to a new band limit.
    pub fn with_l_max(&self, l_max: usize) -> Self {
        let mut out = Self::zeros(l_max);
        let n = out.coeffs.len().min(self.coeffs.len());
        out.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        out
    }

    /// `Σ_q c_{lq}²` for one degree.
    pub fn degree_energy(&self, l: usize) -> f64 {
        if l > self.l_max {
            return 0.0;
        }
        self.coeffs[index(l, -(l as i64))..=index(l, l as i64)].iter().map(|c| c * c).sum()
    }

    /// Apply the spectral multiplier `c_{lq} ↦ m(l) c_{lq}`.
    pub fn multiply<M: Fn(usize) -> f64>(&self, m: M) -> Self {
        let mut out = self.clone();
        for l in 0..=self.l_max {
            let v = m(l);
            for q in -(l as i64)..=(l as i64) {
                out.coeffs[index(l, q)] *= v;
            }
        }
        out
    }

    pub fn evaluate(&self, x: &Vec3) -> f64 {
        evaluate(&self.coeffs, self.l_max, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::from_angles;
    use crate::harmonics::real_harmonics;
    use crate::numeric::gauss_legendre;
    use core::f64::consts::PI;

    #[test]
    fn random_fields_are_unit_and_mean_zero() {
        let fields = HarmonicField::random_batch(8, 5, 7);
        for f in &fields {
            assert!(f.is_mean_zero());
            assert!((f.norm() - 1.0).abs() < 1e-14);
        }
        assert_eq!(fields, HarmonicField::random_batch(8, 5, 7));
        assert_ne!(fields[0], HarmonicField::random_batch(8, 1, 8)[0]);
    }

    #[test]
    fn single_harmonic_evaluates_to_basis() {
        let x = from_angles(1.1, 4.0);
        let y = real_harmonics(5, &x);
        for (l, q) in [(3usize, -2i64), (5, 5), (1, 0)] {
            let f = HarmonicField::single(5, l, q);
            assert!((f.evaluate(&x) - y[index(l, q)]).abs() < 1e-14);
        }
    }

    #[test]
    fn parseval_by_dense_quadrature() {
        let f = HarmonicField::random_batch(10, 1, 3).remove(0);
        let n = 16;
        let (nodes, weights) = gauss_legendre(n);
        let n_phi = 2 * n;
        let mut integral = 0.0;
        for (z, w) in nodes.iter().zip(&weights) {
            for k in 0..n_phi {
                let x = from_angles(libm::acos(*z), 2.0 * PI * k as f64 / n_phi as f64);
                let v = f.evaluate(&x);
                integral += w * 2.0 * PI / n_phi as f64 * v * v;
            }
        }
        assert!((integral - f.norm_sq()).abs() < 1e-8);
    }

    #[test]
    fn zonal_field_depends_on_polar_angle_only() {
        let mut f = HarmonicField::zeros(6);
        for l in 1..=6 {
            f.set(l, 0, 1.0 / l as f64);
        }
        let a = f.evaluate(&from_angles(0.8, 0.1));
        let b = f.evaluate(&from_angles(0.8, 3.7));
        assert!((a - b).abs() < 1e-13);
    }
}
