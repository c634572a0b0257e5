use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frame::Sampling;
use crate::geometry::Vec3;
use crate::harmonics::{index, real_harmonics};
use crate::numeric::gauss_legendre;

/// Largest supported cubature degree.
pub const MAX_DEGREE: usize = 512;

/// Product rule: Gauss–Legendre in `cos θ` times uniform longitudes, exact for
/// spherical polynomials of degree `≤ degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubatureRule {
    pub degree: usize,
    pub cos_nodes: Vec<f64>,
    pub gl_weights: Vec<f64>,
    pub n_phi: usize,
}

impl CubatureRule {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_DEGREE {
            return Err(Error::DegreeOverflow { degree: m });
        }
        let (cos_nodes, gl_weights) = gauss_legendre((m + 2).div_ceil(2));
        Ok(CubatureRule { degree: m, cos_nodes, gl_weights, n_phi: m + 1 })
    }

    pub fn len(&self) -> usize {
        self.cos_nodes.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sampling(&self) -> Sampling {
        let mut s = Sampling::new();
        for (z, w) in self.cos_nodes.iter().zip(&self.gl_weights) {
            let sin = libm::sqrt((1.0 - z * z).max(0.0));
            s.push(*z, sin, 0.0, self.n_phi, w * 2.0 * PI / self.n_phi as f64);
        }
        s
    }

    pub fn nodes(&self) -> Vec<(Vec3, f64)> {
        self.sampling().points().collect()
    }

    /// `max_q |Σ_i λ_i Y_{lq}(x_i) − δ_{l0}·√(4π)|`: zero (to rounding) when the
    /// rule integrates degree `l` exactly.
    pub fn residual(&self, l: usize) -> f64 {
        let mut sums = alloc::vec![0.0; 2 * l + 1];
        for (x, w) in self.nodes() {
            let y = real_harmonics(l, &x);
            for (q, s) in sums.iter_mut().enumerate() {
                *s += w * y[index(l, q as i64 - l as i64)];
            }
        }
        if l == 0 {
            sums[0] -= libm::sqrt(4.0 * PI);
        }
        sums.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}
