//! Partition from a maximal family of disjoint balls.
//!
//! Centers `y_k` are taken greedily from a candidate set so that the balls
//! `B(y_k, t)` are pairwise disjoint. Cells follow the recursion
//! `E_k = B(y_k, 2t) \ (E_1 ∪ … ∪ E_{k−1} ∪ B_{k+1} ∪ …)`: a point inside some
//! `B(y_m, t)` belongs to `E_m`, any other point to the first `k` with
//! `d(x, y_k) < 2t`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::frame::Sampling;
use crate::geometry::{fibonacci_lattice, geodesic, Vec3};
use crate::numeric::gauss_legendre;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GreedyLayout {
    pub t: f64,
    pub centers: Vec<Vec3>,
    pub measures: Vec<f64>,
    /// Every candidate and every grid point lies within `2t` of a center.
    pub maximal: bool,
    pub grid_points: usize,
}

impl GreedyLayout {
    pub fn build(t: f64, candidates: usize, grid_theta: usize) -> Self {
        let pool = fibonacci_lattice(candidates.max(1));
        let mut centers: Vec<Vec3> = Vec::new();
        for y in pool.iter() {
            if centers.iter().all(|c| geodesic(c, y) >= 2.0 * t) {
                centers.push(*y);
            }
        }
        let mut maximal = pool.iter().all(|y| centers.iter().any(|c| geodesic(c, y) < 2.0 * t));

        let (nodes, weights) = gauss_legendre(grid_theta);
        let n_phi = 2 * grid_theta;
        let mut measures = alloc::vec![0.0; centers.len()];
        for (z, w) in nodes.iter().zip(&weights) {
            let s = libm::sqrt((1.0 - z * z).max(0.0));
            for k in 0..n_phi {
                let phi = 2.0 * PI * (k as f64 + 0.5) / n_phi as f64;
                let x = [s * libm::cos(phi), s * libm::sin(phi), *z];
                let (label, covered) = label_of(&centers, t, &x);
                maximal &= covered;
                measures[label] += w * 2.0 * PI / n_phi as f64;
            }
        }
        GreedyLayout { t, centers, measures, maximal, grid_points: grid_theta * n_phi }
    }

    pub fn locate(&self, x: &Vec3) -> usize {
        label_of(&self.centers, self.t, x).0
    }

    pub fn sampling(&self) -> Sampling {
        let mut s = Sampling::new();
        for (c, m) in self.centers.iter().zip(&self.measures) {
            s.push_point(c, *m);
        }
        s
    }
}

/// Cell label of `x` and whether `x` is within `2t` of some center.
fn label_of(centers: &[Vec3], t: f64, x: &Vec3) -> (usize, bool) {
    let mut first_outer = None;
    let mut nearest = (0, f64::INFINITY);
    for (k, c) in centers.iter().enumerate() {
        let d = geodesic(c, x);
        if d < t {
            return (k, true);
        }
        if d < 2.0 * t && first_outer.is_none() {
            first_outer = Some(k);
        }
        if d < nearest.1 {
            nearest = (k, d);
        }
    }
    match first_outer {
        Some(k) => (k, true),
        None => (nearest.0, false),
    }
}
