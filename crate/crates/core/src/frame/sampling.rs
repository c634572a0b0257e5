use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::geometry::Vec3;

/// `count` sample points on one latitude circle, at longitudes
/// `phi0 + 2πk/count`, each carrying the same weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ring {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub phi0: f64,
    pub count: usize,
    pub weight: f64,
    /// Index of the ring's first point in the global ordering.
    pub first: usize,
}

impl Ring {
    pub fn phi(&self, k: usize) -> f64 {
        self.phi0 + 2.0 * PI * k as f64 / self.count as f64
    }

    pub fn point(&self, k: usize) -> Vec3 {
        let phi = self.phi(k);
        [self.sin_theta * libm::cos(phi), self.sin_theta * libm::sin(phi), self.cos_theta]
    }
}

/// Weighted sample points (cell centers and measures, or cubature nodes and
/// weights) grouped into rings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sampling {
    pub rings: Vec<Ring>,
}

impl Sampling {
    pub fn new() -> Self {
        Sampling { rings: Vec::new() }
    }

    /// Append a ring; its `first` index is assigned here.
    pub fn push(&mut self, cos_theta: f64, sin_theta: f64, phi0: f64, count: usize, weight: f64) {
        let first = self.len();
        self.rings.push(Ring { cos_theta, sin_theta, phi0, count, weight, first });
    }

    pub fn push_point(&mut self, x: &Vec3, weight: f64) {
        let (theta, phi) = crate::geometry::to_angles(x);
        self.push(libm::cos(theta), libm::sin(theta), phi, 1, weight);
    }

    pub fn len(&self) -> usize {
        self.rings.last().map_or(0, |r| r.first + r.count)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_weight(&self) -> f64 {
        self.rings.iter().map(|r| r.weight * r.count as f64).sum()
    }

    /// Every point and weight in global order.
    pub fn points(&self) -> impl Iterator<Item = (Vec3, f64)> + '_ {
        self.rings.iter().flat_map(|r| (0..r.count).map(move |k| (r.point(k), r.weight)))
    }
}
