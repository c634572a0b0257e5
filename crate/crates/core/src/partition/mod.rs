//! Per-scale partitions of S² and product cubature rules.

mod bands;
mod cubature;
mod greedy;

use core::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::frame::Sampling;
use crate::geometry::{cap_area, Vec3};

pub use bands::rect_diameter;
pub use cubature::{CubatureRule, MAX_DEGREE};

use bands::BandLayout;
use greedy::GreedyLayout;

/// Smallest target diameter accepted by [`build_partition`].
pub const MIN_TARGET: f64 = 1e-3;

/// Scale below which the measure lower bound `μ ≥ c₀ (b a^j)²` is reported.
pub const DELTA0: f64 = PI / 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CellGeometry {
    Sphere,
    Cap { north: bool, radius: f64 },
    Rect { theta0: f64, theta1: f64, phi0: f64, phi1: f64 },
    /// A cell of the ball construction, known only through its label map.
    Labeled { label: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub center: Vec3,
    pub measure: f64,
    pub diameter_bound: f64,
    pub geometry: CellGeometry,
}

#[derive(Clone, Debug, PartialEq)]
enum Layout {
    Whole,
    Bands(BandLayout),
    Greedy(GreedyLayout),
}

/// Disjoint cells `E_{j,k}` covering S² for one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalePartition {
    pub j: i32,
    /// Diameter target `b·a^j` (`4t` for the ball construction).
    pub target: f64,
    layout: Layout,
}

/// Latitude-band partition with every cell diameter at most `b·a^j`.
pub fn build_partition(j: i32, a: f64, b: f64) -> Result<ScalePartition> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(invalid("a", "dilation must be a finite number > 1"));
    }
    if !(b > 0.0 && b <= 1.0) {
        return Err(invalid("b", "must lie in (0, 1]"));
    }
    partition_for_target(j, b * libm::pow(a, j as f64))
}

/// Band partition for an explicit diameter target.
pub fn partition_for_target(j: i32, target: f64) -> Result<ScalePartition> {
    if !(target > 0.0) {
        return Err(invalid("target", "must be > 0"));
    }
    let layout = if target >= PI {
        Layout::Whole
    } else if target < MIN_TARGET {
        return Err(Error::CellCountOverflow { target });
    } else {
        Layout::Bands(BandLayout::build(target))
    };
    Ok(ScalePartition { j, target, layout })
}

/// Maximal disjoint-ball partition with radius `t`, candidates from a
/// Fibonacci lattice and measures from a Gauss–Legendre × longitude grid
/// with `grid_theta` latitudes.
pub fn greedy_ball_partition(t: f64, candidates: usize, grid_theta: usize) -> Result<ScalePartition> {
    if !(t > 0.0 && t < PI) {
        return Err(invalid("t", "must lie in (0, π)"));
    }
    if candidates == 0 || grid_theta < 2 {
        return Err(invalid("candidates", "need at least one candidate and two grid latitudes"));
    }
    let layout = GreedyLayout::build(t, candidates, grid_theta);
    Ok(ScalePartition { j: 0, target: 4.0 * t, layout: Layout::Greedy(layout) })
}

/// Default grid resolution for [`greedy_ball_partition`] at radius `t`.
pub fn default_greedy_grid(t: f64) -> usize {
    (libm::ceil(24.0 * PI / t) as usize).clamp(64, 2048)
}

impl ScalePartition {
    pub fn len(&self) -> usize {
        match &self.layout {
            Layout::Whole => 1,
            Layout::Bands(b) => b.len(),
            Layout::Greedy(g) => g.centers.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell(&self, k: usize) -> Option<Cell> {
        if k >= self.len() {
            return None;
        }
        Some(match &self.layout {
            Layout::Whole => Cell {
                center: [0.0, 0.0, 1.0],
                measure: 4.0 * PI,
                diameter_bound: PI,
                geometry: CellGeometry::Sphere,
            },
            Layout::Bands(b) => b.cell(k),
            Layout::Greedy(g) => Cell {
                center: g.centers[k],
                measure: g.measures[k],
                diameter_bound: 4.0 * g.t,
                geometry: CellGeometry::Labeled { label: k },
            },
        })
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.len()).filter_map(move |k| self.cell(k))
    }

    /// Index of the cell containing `x`; boundary points go to the lowest
    /// index.
    pub fn locate_cell(&self, x: &Vec3) -> usize {
        match &self.layout {
            Layout::Whole => 0,
            Layout::Bands(b) => b.locate(x),
            Layout::Greedy(g) => g.locate(x),
        }
    }

    /// Cell centers and measures grouped into latitude rings.
    pub fn sampling(&self) -> Sampling {
        match &self.layout {
            Layout::Whole => {
                let mut s = Sampling::new();
                s.push(1.0, 0.0, 0.0, 1, 4.0 * PI);
                s
            }
            Layout::Bands(b) => b.sampling(),
            Layout::Greedy(g) => g.sampling(),
        }
    }

    pub fn total_measure(&self) -> f64 {
        self.sampling().total_weight()
    }

    pub fn min_measure(&self) -> f64 {
        match &self.layout {
            Layout::Bands(b) => b.min_measure(),
            _ => self.cells().map(|c| c.measure).fold(f64::INFINITY, f64::min),
        }
    }

    pub fn max_diameter_bound(&self) -> f64 {
        match &self.layout {
            Layout::Bands(b) => b.max_diameter(),
            _ => self.cells().map(|c| c.diameter_bound).fold(0.0, f64::max),
        }
    }

    /// `min_k μ(E_k) / target²`, reported when `target ≤ δ₀`.
    pub fn achieved_c0(&self) -> Option<f64> {
        (self.target <= DELTA0).then(|| self.min_measure() / (self.target * self.target))
    }

    /// For the ball construction: whether maximality was certified on the
    /// candidate set and the measure grid. Always `true` for other layouts.
    pub fn is_maximal(&self) -> bool {
        match &self.layout {
            Layout::Greedy(g) => g.maximal,
            _ => true,
        }
    }

    /// Ball radius `t` of the ball construction.
    pub fn ball_radius(&self) -> Option<f64> {
        match &self.layout {
            Layout::Greedy(g) => Some(g.t),
            _ => None,
        }
    }

    /// Lower bound `area(cap(t))` on every cell of the ball construction.
    pub fn ball_area(&self) -> Option<f64> {
        self.ball_radius().map(cap_area)
    }
}
