//! Points on the unit sphere.

use alloc::vec::Vec;
use core::f64::consts::PI;

pub type Vec3 = [f64; 3];

pub fn from_angles(theta: f64, phi: f64) -> Vec3 {
    let s = libm::sin(theta);
    [s * libm::cos(phi), s * libm::sin(phi), libm::cos(theta)]
}

/// Polar angle in `[0, π]` and longitude in `[0, 2π)`.
pub fn to_angles(x: &Vec3) -> (f64, f64) {
    let rho = libm::hypot(x[0], x[1]);
    let theta = libm::atan2(rho, x[2]);
    let mut phi = libm::atan2(x[1], x[0]);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi >= 2.0 * PI {
        phi = 0.0;
    }
    (theta, phi)
}

pub fn dot(x: &Vec3, y: &Vec3) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

pub fn normalize(x: Vec3) -> Vec3 {
    let n = libm::sqrt(dot(&x, &x));
    [x[0] / n, x[1] / n, x[2] / n]
}

/// Great-circle distance, accurate for nearly equal and nearly antipodal
/// points.
pub fn geodesic(x: &Vec3, y: &Vec3) -> f64 {
    let c = [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ];
    libm::atan2(libm::sqrt(dot(&c, &c)), dot(x, y))
}

/// Area of a geodesic cap of radius `r`.
pub fn cap_area(r: f64) -> f64 {
    2.0 * PI * (1.0 - libm::cos(r.clamp(0.0, PI)))
}

/// `n` nearly uniform points (Fibonacci lattice).
pub fn fibonacci_lattice(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - libm::sqrt(5.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = libm::sqrt((1.0 - z * z).max(0.0));
            let phi = golden * i as f64;
            [rho * libm::cos(phi), rho * libm::sin(phi), z]
        })
        .collect()
}
