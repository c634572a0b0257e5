//! Analysis, synthesis and quadratic forms of a frame, computed exactly in
//! the harmonic basis.
//!
//! On a ring of `n` equally spaced points the filtered field
//! `G = m_j(Δ)F` restricts to a trigonometric polynomial
//! `α₀ + Σ_m α_m cos mφ + β_m sin mφ`. When the whole ring is used and `n`
//! exceeds the sum of the degrees involved, discrete orthogonality of the
//! Fourier modes turns the sums over the ring into closed forms, so only
//! partially selected rings are visited point by point.

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::harmonics::{index, tri_index, LegendreTable};

use super::{FrameSpec, HarmonicField, Ring, Scale};

/// Which elements of one scale take part in a sum.
#[derive(Clone, Debug, PartialEq)]
pub enum Selection {
    All,
    Nothing,
    /// Per-point membership, in the scale's global point order.
    Cells(Vec<bool>),
}

impl Selection {
    fn ring_state(&self, ring: &Ring) -> RingState {
        match self {
            Selection::All => RingState::Full,
            Selection::Nothing => RingState::Empty,
            Selection::Cells(mask) => {
                let part = &mask[ring.first..ring.first + ring.count];
                let hits = part.iter().filter(|&&b| b).count();
                if hits == ring.count {
                    RingState::Full
                } else if hits == 0 {
                    RingState::Empty
                } else {
                    RingState::Partial
                }
            }
        }
    }

    fn contains(&self, k: usize) -> bool {
        match self {
            Selection::All => true,
            Selection::Nothing => false,
            Selection::Cells(mask) => mask[k],
        }
    }

    pub fn count(&self, len: usize) -> usize {
        match self {
            Selection::All => len,
            Selection::Nothing => 0,
            Selection::Cells(mask) => mask.iter().filter(|&&b| b).count(),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum RingState {
    Full,
    Partial,
    Empty,
}

/// A subset `I` of frame indices `(j, k)`, one [`Selection`] per scale of a
/// [`FrameSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct IndexSet {
    pub scales: Vec<Selection>,
}

impl IndexSet {
    pub fn all(spec: &FrameSpec) -> Self {
        IndexSet { scales: spec.scales.iter().map(|_| Selection::All).collect() }
    }

    /// Every element with `lo ≤ j ≤ hi`.
    pub fn window(spec: &FrameSpec, lo: i32, hi: i32) -> Result<Self> {
        let (s_lo, s_hi) = spec.j_range();
        if lo < s_lo || hi > s_hi || lo > hi {
            return Err(Error::ScaleOutOfRange { lo, hi });
        }
        Ok(IndexSet {
            scales: spec
                .scales
                .iter()
                .map(|s| if s.j >= lo && s.j <= hi { Selection::All } else { Selection::Nothing })
                .collect(),
        })
    }

    /// Elements of `self` not in `other`.
    pub fn minus(&self, other: &Self) -> Self {
        let scales = self
            .scales
            .iter()
            .zip(&other.scales)
            .map(|(a, b)| match (a, b) {
                (_, Selection::All) | (Selection::Nothing, _) => Selection::Nothing,
                (a, Selection::Nothing) => a.clone(),
                (a, Selection::Cells(mb)) => {
                    Selection::Cells(mb.iter().enumerate().map(|(k, &inb)| a.contains(k) && !inb).collect())
                }
            })
            .collect();
        IndexSet { scales }
    }

    pub fn is_subset_of(&self, other: &Self, spec: &FrameSpec) -> bool {
        self.scales.iter().zip(&other.scales).zip(&spec.scales).all(|((a, b), s)| {
            (0..s.len()).all(|k| !a.contains(k) || b.contains(k))
        })
    }

    pub fn count(&self, spec: &FrameSpec) -> usize {
        self.scales.iter().zip(&spec.scales).map(|(sel, s)| sel.count(s.len())).sum()
    }
}

/// How ring sums are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summation {
    /// Closed forms on fully used rings, pointwise elsewhere.
    Auto,
    /// Pointwise everywhere.
    Direct,
}

/// `⟨F, φ_{j,k}⟩` for every element, scale by scale.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameCoefficients {
    pub scales: Vec<(i32, Vec<f64>)>,
}

impl FrameCoefficients {
    pub fn get(&self, j: i32, k: usize) -> Option<f64> {
        self.scales.iter().find(|(sj, _)| *sj == j).and_then(|(_, v)| v.get(k).copied())
    }

    /// `Σ_{j,k} ⟨F, φ_{j,k}⟩²`.
    pub fn energy(&self) -> f64 {
        self.scales.iter().flat_map(|(_, v)| v.iter()).map(|c| c * c).sum()
    }

    pub fn len(&self) -> usize {
        self.scales.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Workspace {
    table: LegendreTable,
    p: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    r_cos: Vec<f64>,
    r_sin: Vec<f64>,
    cos_m: Vec<f64>,
    sin_m: Vec<f64>,
}

impl Workspace {
    fn new(l_max: usize) -> Self {
        let table = LegendreTable::new(l_max);
        let size = table.size();
        let n = l_max + 1;
        Workspace {
            table,
            p: alloc::vec![0.0; size],
            alpha: alloc::vec![0.0; n],
            beta: alloc::vec![0.0; n],
            r_cos: alloc::vec![0.0; n],
            r_sin: alloc::vec![0.0; n],
            cos_m: alloc::vec![0.0; n],
            sin_m: alloc::vec![0.0; n],
        }
    }

    fn fill_trig(&mut self, phi: f64, upto: usize) {
        let (s1, c1) = (libm::sin(phi), libm::cos(phi));
        self.cos_m[0] = 1.0;
        self.sin_m[0] = 0.0;
        for m in 1..=upto {
            self.cos_m[m] = self.cos_m[m - 1] * c1 - self.sin_m[m - 1] * s1;
            self.sin_m[m] = self.sin_m[m - 1] * c1 + self.cos_m[m - 1] * s1;
        }
    }

    /// Value of `α₀ + Σ α_m cos mφ + β_m sin mφ` with `cos_m`, `sin_m` filled.
    fn ring_value(&self, lg: usize) -> f64 {
        let mut v = self.alpha[0];
        for m in 1..=lg {
            v += self.alpha[m] * self.cos_m[m] + self.beta[m] * self.sin_m[m];
        }
        v
    }
}

/// What a pass over one scale computes.
enum Pass<'a> {
    /// `Σ_{k∈I} μ_k G(x_k)²`.
    Energy(&'a mut f64),
    /// Adds `m_j(l) Σ_{k∈I} μ_k G(x_k) Y_{lq}(x_k)` to the output coefficients.
    Synthesis(&'a mut [f64]),
    /// `μ_k^{1/2} G(x_k)` for every point.
    Coefficients(&'a mut Vec<f64>),
}

/// Filtered coefficients `m_j(l) F_{lq}` and their effective degree.
fn filtered(scale: &Scale, field: &HarmonicField) -> (Vec<f64>, usize) {
    let lg = field.l_max().min(scale.band_limit()).min(scale.multiplier.len() - 1);
    let mut g = alloc::vec![0.0; (lg + 1) * (lg + 1)];
    for l in 0..=lg {
        let m = scale.multiplier[l];
        for q in -(l as i64)..=(l as i64) {
            g[index(l, q)] = m * field.get(l, q);
        }
    }
    (g, lg)
}

fn scale_pass(
    scale: &Scale,
    field: &HarmonicField,
    sel: &Selection,
    mode: Summation,
    l_out: usize,
    ws: &mut Workspace,
    mut pass: Pass<'_>,
) {
    let (g, lg) = filtered(scale, field);
    let synth = matches!(pass, Pass::Synthesis(_));
    let l_out = if synth { l_out.min(scale.band_limit()) } else { 0 };
    let lp = lg.max(l_out);
    let mut h = if synth { alloc::vec![0.0; (l_out + 1) * (l_out + 1)] } else { Vec::new() };
    let all_zero = g.iter().all(|&c| c == 0.0);

    for ring in &scale.sampling.rings {
        let state = if matches!(pass, Pass::Coefficients(_)) { RingState::Full } else { sel.ring_state(ring) };
        if state == RingState::Empty {
            continue;
        }
        if all_zero {
            if let Pass::Coefficients(out) = &mut pass {
                out.extend(core::iter::repeat_n(0.0, ring.count));
            }
            continue;
        }
        ws.table.fill(ring.cos_theta, ring.sin_theta, &mut ws.p[..]);
        for m in 0..=lg {
            let (mut a, mut b) = (0.0, 0.0);
            for l in m..=lg {
                let v = ws.p[tri_index(l, m)];
                a += g[index(l, m as i64)] * v;
                if m > 0 {
                    b += g[index(l, -(m as i64))] * v;
                }
            }
            if m > 0 {
                a *= SQRT_2;
                b *= SQRT_2;
            }
            ws.alpha[m] = a;
            ws.beta[m] = b;
        }
        let n = ring.count;
        let w = ring.weight;
        let nf = n as f64;
        for m in 0..=l_out {
            ws.r_cos[m] = 0.0;
            ws.r_sin[m] = 0.0;
        }
        let closed = mode == Summation::Auto && state == RingState::Full;
        match &mut pass {
            Pass::Energy(acc) if closed && n > 2 * lg => {
                let mut e = ws.alpha[0] * ws.alpha[0];
                for m in 1..=lg {
                    e += 0.5 * (ws.alpha[m] * ws.alpha[m] + ws.beta[m] * ws.beta[m]);
                }
                **acc += w * nf * e;
            }
            Pass::Synthesis(_) if closed && n > lg + l_out => {
                ws.r_cos[0] = w * nf * ws.alpha[0];
                for m in 1..=lg.min(l_out) {
                    ws.r_cos[m] = 0.5 * w * nf * ws.alpha[m];
                    ws.r_sin[m] = 0.5 * w * nf * ws.beta[m];
                }
            }
            _ => {
                let sw = libm::sqrt(w);
                for k in 0..n {
                    let selected = state == RingState::Full || sel.contains(ring.first + k);
                    if !selected {
                        continue;
                    }
                    ws.fill_trig(ring.phi(k), lp);
                    let v = ws.ring_value(lg);
                    match &mut pass {
                        Pass::Energy(acc) => **acc += w * v * v,
                        Pass::Coefficients(out) => out.push(sw * v),
                        Pass::Synthesis(_) => {
                            let wv = w * v;
                            for m in 0..=l_out {
                                ws.r_cos[m] += wv * ws.cos_m[m];
                                ws.r_sin[m] += wv * ws.sin_m[m];
                            }
                        }
                    }
                }
            }
        }
        if synth {
            for m in 0..=l_out {
                let (rc, rs) = (ws.r_cos[m], ws.r_sin[m]);
                if rc == 0.0 && rs == 0.0 {
                    continue;
                }
                for l in m..=l_out {
                    let v = ws.p[tri_index(l, m)];
                    if m == 0 {
                        h[index(l, 0)] += v * rc;
                    } else {
                        h[index(l, m as i64)] += SQRT_2 * v * rc;
                        h[index(l, -(m as i64))] += SQRT_2 * v * rs;
                    }
                }
            }
        }
    }
    if let Pass::Synthesis(out) = pass {
        for l in 0..=l_out {
            let mult = scale.multiplier[l];
            for q in -(l as i64)..=(l as i64) {
                out[index(l, q)] += mult * h[index(l, q)];
            }
        }
    }
}

fn check_field(spec: &FrameSpec, field: &HarmonicField) -> Result<()> {
    if field.l_max() > spec.l_max {
        return Err(Error::BandLimitViolation { field: field.l_max(), frame: spec.l_max });
    }
    Ok(())
}

fn check_set(spec: &FrameSpec, set: &IndexSet) -> Result<()> {
    if set.scales.len() != spec.scales.len() {
        return Err(invalid("index_set", "one selection per scale is required"));
    }
    for (sel, s) in set.scales.iter().zip(&spec.scales) {
        if let Selection::Cells(mask) = sel {
            if mask.len() != s.len() {
                return Err(invalid("index_set", "selection mask length differs from the scale size"));
            }
        }
    }
    Ok(())
}

/// `φ_{j,k}` in harmonic form.
pub fn frame_element(spec: &FrameSpec, j: i32, k: usize) -> Result<HarmonicField> {
    let (lo, hi) = spec.j_range();
    let scale = spec.scale(j).ok_or(Error::ScaleOutOfRange { lo: j.min(lo), hi: j.max(hi) })?;
    let ring_pos = scale.sampling.rings.partition_point(|r| r.first + r.count <= k);
    let ring = scale
        .sampling
        .rings
        .get(ring_pos)
        .ok_or_else(|| invalid("k", "cell index out of range"))?;
    let x = ring.point(k - ring.first);
    let y = crate::harmonics::real_harmonics(spec.l_max, &x);
    let sw = libm::sqrt(ring.weight);
    let mut out = HarmonicField::zeros(spec.l_max);
    for l in 0..=spec.l_max {
        let m = scale.multiplier[l];
        for q in -(l as i64)..=(l as i64) {
            out.set(l, q, sw * m * y[index(l, q)]);
        }
    }
    Ok(out)
}

/// Center and weight of element `(j, k)`.
pub fn element_point(spec: &FrameSpec, j: i32, k: usize) -> Option<([f64; 3], f64)> {
    let scale = spec.scale(j)?;
    let rings = &scale.sampling.rings;
    let ring = rings.get(rings.partition_point(|r| r.first + r.count <= k))?;
    Some((ring.point(k - ring.first), ring.weight))
}

/// `⟨F, φ_{j,k}⟩` for all elements.
pub fn analyze(spec: &FrameSpec, field: &HarmonicField) -> Result<FrameCoefficients> {
    check_field(spec, field)?;
    let mut ws = Workspace::new(spec.l_max);
    let scales = spec
        .scales
        .iter()
        .map(|s| {
            let mut out = Vec::with_capacity(s.len());
            scale_pass(s, field, &Selection::All, Summation::Auto, 0, &mut ws, Pass::Coefficients(&mut out));
            (s.j, out)
        })
        .collect();
    Ok(FrameCoefficients { scales })
}

/// `⟨S_I F, F⟩ = Σ_{(j,k)∈I} ⟨F, φ_{j,k}⟩²`.
pub fn quadratic_form_with(spec: &FrameSpec, field: &HarmonicField, set: &IndexSet, mode: Summation) -> Result<f64> {
    check_field(spec, field)?;
    check_set(spec, set)?;
    let mut ws = Workspace::new(spec.l_max);
    let mut total = 0.0;
    for (s, sel) in spec.scales.iter().zip(&set.scales) {
        if *sel == Selection::Nothing {
            continue;
        }
        let mut e = 0.0;
        scale_pass(s, field, sel, mode, 0, &mut ws, Pass::Energy(&mut e));
        total += e;
    }
    Ok(total)
}

pub fn quadratic_form(spec: &FrameSpec, field: &HarmonicField, set: &IndexSet) -> Result<f64> {
    quadratic_form_with(spec, field, set, Summation::Auto)
}

/// Per-scale energies `Σ_k ⟨F, φ_{j,k}⟩²`.
pub fn scale_energies(spec: &FrameSpec, field: &HarmonicField) -> Result<Vec<(i32, f64)>> {
    check_field(spec, field)?;
    let mut ws = Workspace::new(spec.l_max);
    Ok(spec
        .scales
        .iter()
        .map(|s| {
            let mut e = 0.0;
            scale_pass(s, field, &Selection::All, Summation::Auto, 0, &mut ws, Pass::Energy(&mut e));
            (s.j, e)
        })
        .collect())
}

/// `S_I F = Σ_{(j,k)∈I} ⟨F, φ_{j,k}⟩ φ_{j,k}`.
pub fn summation_subset_with(
    spec: &FrameSpec,
    field: &HarmonicField,
    set: &IndexSet,
    mode: Summation,
) -> Result<HarmonicField> {
    check_field(spec, field)?;
    check_set(spec, set)?;
    let mut ws = Workspace::new(spec.l_max);
    let mut out = HarmonicField::zeros(spec.l_max);
    for (s, sel) in spec.scales.iter().zip(&set.scales) {
        if *sel == Selection::Nothing {
            continue;
        }
        scale_pass(s, field, sel, mode, spec.l_max, &mut ws, Pass::Synthesis(out.coeffs_mut()));
    }
    Ok(out)
}

pub fn summation_subset(spec: &FrameSpec, field: &HarmonicField, set: &IndexSet) -> Result<HarmonicField> {
    summation_subset_with(spec, field, set, Summation::Auto)
}

/// `SF = Σ_{j,k} ⟨F, φ_{j,k}⟩ φ_{j,k}`.
pub fn summation_operator(spec: &FrameSpec, field: &HarmonicField) -> Result<HarmonicField> {
    summation_subset(spec, field, &IndexSet::all(spec))
}

/// `⟨SF, F⟩ / ⟨F, F⟩`.
pub fn rayleigh_quotient(spec: &FrameSpec, field: &HarmonicField) -> Result<f64> {
    let n = field.norm_sq();
    if n == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(quadratic_form(spec, field, &IndexSet::all(spec))? / n)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalBounds {
    pub min: f64,
    pub max: f64,
    pub ratio: f64,
}

/// Extremes of the Rayleigh quotient over `trials` random mean-zero unit
/// fields of degree `spec.l_max`.
pub fn empirical_frame_bounds(spec: &FrameSpec, trials: usize, seed: u64) -> Result<EmpiricalBounds> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for f in HarmonicField::random_batch(spec.l_max, trials, seed) {
        let q = rayleigh_quotient(spec, &f)?;
        min = min.min(q);
        max = max.max(q);
    }
    Ok(EmpiricalBounds { min, max, ratio: max / min })
}

/// Power-iteration estimate of `‖S‖` on mean-zero fields of degree
/// `spec.l_max`. The returned Rayleigh quotient never exceeds the true norm.
pub fn operator_norm_estimate(spec: &FrameSpec, iterations: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = HarmonicField::random(spec.l_max, &mut rng);
    let mut estimate: f64 = 0.0;
    for _ in 0..iterations.max(1) {
        let mut w = summation_operator(spec, &v)?;
        w.remove_mean();
        estimate = estimate.max(v.dot(&w) / v.norm_sq());
        let n = w.norm();
        if n == 0.0 {
            break;
        }
        w.scale(1.0 / n);
        v = w;
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_series;
    use crate::partition::greedy_ball_partition;
    use crate::spectral::SpectralFilter;
    use core::f64::consts::PI;

    fn small_spec() -> FrameSpec {
        FrameSpec::new(SpectralFilter::Mexican(1), 2.0, 0.5, (-3, 1), 10).unwrap()
    }

    #[test]
    fn closed_forms_match_direct_sums() {
        let spec = small_spec();
        let fields = HarmonicField::random_batch(10, 2, 11);
        let all = IndexSet::all(&spec);
        let a = quadratic_form_with(&spec, &fields[0], &all, Summation::Auto).unwrap();
        let d = quadratic_form_with(&spec, &fields[0], &all, Summation::Direct).unwrap();
        assert!((a - d).abs() < 1e-12 * d.abs().max(1.0), "{a} {d}");
        let sa = summation_subset_with(&spec, &fields[0], &all, Summation::Auto).unwrap();
        let sd = summation_subset_with(&spec, &fields[0], &all, Summation::Direct).unwrap();
        assert!(sa.sub(&sd).norm() < 1e-12);
        let coeffs = analyze(&spec, &fields[0]).unwrap();
        assert!((coeffs.energy() - a).abs() < 1e-12);
    }

    #[test]
    fn element_self_inner_product() {
        let spec = small_spec();
        let phi = frame_element(&spec, -1, 17).unwrap();
        let mut unit = phi.clone();
        unit.scale(1.0 / phi.norm());
        let c = analyze(&spec, &unit).unwrap();
        assert!((c.get(-1, 17).unwrap() - phi.norm()).abs() < 1e-13);
        assert_eq!(phi.get(0, 0), 0.0);
    }

    #[test]
    fn element_norm_by_addition_theorem() {
        let spec = small_spec();
        let (_, mu) = element_point(&spec, 0, 5).unwrap();
        let phi = frame_element(&spec, 0, 5).unwrap();
        let s = spec.scale(0).unwrap();
        let expected: f64 =
            (0..=10).map(|l| mu * s.multiplier[l] * s.multiplier[l] * (2.0 * l as f64 + 1.0) / (4.0 * PI)).sum();
        assert!((phi.norm_sq() - expected).abs() < 1e-13);
    }

    #[test]
    fn element_matches_kernel_pointwise() {
        // Carry enough degrees that the spectral truncation is negligible.
        let spec = FrameSpec::new(SpectralFilter::Mexican(1), 2.0, 0.5, (-2, -2), 60).unwrap();
        let (center, mu) = element_point(&spec, -2, 9).unwrap();
        let phi = frame_element(&spec, -2, 9).unwrap();
        let x = crate::geometry::from_angles(0.9, 2.0);
        let t = 0.25;
        let k = kernel_series(&SpectralFilter::Mexican(1), t, crate::geometry::dot(&center, &x), 1e-13).unwrap();
        let expected = libm::sqrt(mu) * k / (4.0 * PI);
        assert!((phi.evaluate(&x) - expected).abs() < 1e-11);
    }

    #[test]
    fn constants_are_annihilated() {
        let spec = small_spec();
        let c = HarmonicField::single(10, 0, 0);
        assert!(analyze(&spec, &c).unwrap().energy() == 0.0);
        assert!(summation_operator(&spec, &c).unwrap().norm() == 0.0);
    }

    #[test]
    fn summation_is_self_adjoint_psd() {
        let spec = small_spec();
        let f = HarmonicField::random_batch(10, 2, 5);
        let sf = summation_operator(&spec, &f[0]).unwrap();
        let sg = summation_operator(&spec, &f[1]).unwrap();
        assert!((sf.dot(&f[1]) - f[0].dot(&sg)).abs() < 1e-12);
        assert!(sf.dot(&f[0]) >= 0.0);
        assert!(sf.is_mean_zero() || sf.get(0, 0).abs() < 1e-15);
        let q = quadratic_form(&spec, &f[0], &IndexSet::all(&spec)).unwrap();
        assert!(((sf.dot(&f[0]) - q) / q).abs() < 1e-10);
    }

    #[test]
    fn masks_reduce_quadratic_form() {
        let spec = small_spec();
        let f = HarmonicField::random_batch(10, 1, 9).remove(0);
        let mut set = IndexSet::all(&spec);
        for (sel, s) in set.scales.iter_mut().zip(&spec.scales) {
            *sel = Selection::Cells((0..s.len()).map(|k| k % 3 != 0).collect());
        }
        let sub = quadratic_form(&spec, &f, &set).unwrap();
        let direct = quadratic_form_with(&spec, &f, &set, Summation::Direct).unwrap();
        let full = quadratic_form(&spec, &f, &IndexSet::all(&spec)).unwrap();
        assert!((sub - direct).abs() < 1e-12);
        assert!(sub <= full);
        let s_i = summation_subset(&spec, &f, &set).unwrap();
        assert!((s_i.dot(&f) - sub).abs() < 1e-12);
        let rest = IndexSet::all(&spec).minus(&set);
        let other = quadratic_form(&spec, &f, &rest).unwrap();
        assert!((sub + other - full).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_is_homogeneous() {
        let spec = small_spec();
        let f = HarmonicField::random_batch(10, 1, 1).remove(0);
        let mut g = f.clone();
        g.scale(-3.5);
        let (a, b) = (rayleigh_quotient(&spec, &f).unwrap(), rayleigh_quotient(&spec, &g).unwrap());
        assert!(a > 0.0 && ((a - b) / a).abs() < 1e-13);
        assert_eq!(rayleigh_quotient(&spec, &HarmonicField::zeros(10)), Err(Error::ZeroField));
        let big = HarmonicField::zeros(11);
        assert!(matches!(analyze(&spec, &big), Err(Error::BandLimitViolation { .. })));
    }

    #[test]
    fn single_trial_bounds_coincide() {
        let spec = small_spec();
        let b = empirical_frame_bounds(&spec, 1, 3).unwrap();
        assert_eq!(b.min, b.max);
        let norm = operator_norm_estimate(&spec, 30, 1).unwrap();
        let many = empirical_frame_bounds(&spec, 10, 4).unwrap();
        assert!(norm >= many.max * (1.0 - 1e-12));
    }

    #[test]
    fn labeled_cells_work_as_samplings() {
        let part = greedy_ball_partition(0.5, 400, 96).unwrap();
        let f = SpectralFilter::Mexican(1);
        let scale = super::super::Scale::new(0, 0.5, &f, crate::spectral::Convention::Laplacian, 8, part.sampling());
        let spec = FrameSpec::from_scales(f, crate::spectral::Convention::Laplacian, 2.0, 1.0, 8, alloc::vec![scale]);
        let field = HarmonicField::random_batch(8, 1, 2).remove(0);
        let a = quadratic_form_with(&spec, &field, &IndexSet::all(&spec), Summation::Auto).unwrap();
        let d = quadratic_form_with(&spec, &field, &IndexSet::all(&spec), Summation::Direct).unwrap();
        assert!((a - d).abs() < 1e-13);
    }
}
