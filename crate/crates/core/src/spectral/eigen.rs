use alloc::vec::Vec;

/// Eigenvalue `l(l+1)` of the Laplace–Beltrami operator on S².
pub fn sphere_eigenvalue(l: usize) -> f64 {
    let l = l as f64;
    l * (l + 1.0)
}

/// Dimension `2l + 1` of the degree-`l` eigenspace.
pub fn multiplicity(l: usize) -> usize {
    2 * l + 1
}

/// Legendre polynomial `P_l(x)` by the three-term recurrence.
pub fn legendre(l: usize, x: f64) -> f64 {
    let mut p0 = 1.0;
    if l == 0 {
        return p0;
    }
    let mut p1 = x;
    for k in 1..l {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `P_0(x), …, P_lmax(x)`.
pub fn legendre_all(lmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(lmax + 1);
    out.push(1.0);
    if lmax >= 1 {
        out.push(x);
    }
    for k in 1..lmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}
