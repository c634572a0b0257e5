use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphframe_core::frame::{empirical_frame_bounds, frame_element};
use sphframe_core::needlet::{
    build_needlet_frame, crossing_bracket, crossing_index, hybrid_tail_diagnostics, needlet_window,
    tail_bound_lhs_rhs,
};
use sphframe_core::{Convention, SpectralFilter};

#[test]
fn dyadic_partition_of_unity() {
    let g = SpectralFilter::NormalizedCutoff;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let s = 2f64.powf(rng.random_range(-20.0..20.0));
        let sum: f64 = (-40..=40).map(|j| g.eval(2f64.powi(j) * s).powi(2)).sum();
        assert!((sum - 1.0).abs() < 1e-12, "{s} {sum}");
    }
}

#[test]
fn sqrt_laplacian_needlets_are_tight() {
    let conv = Convention::SqrtLaplacian;
    let (lo, hi) = needlet_window(12, conv).unwrap();
    let nf = build_needlet_frame(SpectralFilter::NormalizedCutoff, lo, hi, conv).unwrap();
    let (c_lo, c_hi) = nf.covered_degrees().unwrap();
    assert!(c_lo == 1 && c_hi >= 12);
    let mut spec = nf.frame.clone();
    // Fields of the covered degrees only.
    spec.l_max = nf.l_max();
    let b = empirical_frame_bounds(&spec, 6, 3).unwrap();
    assert!(b.min > 0.0);
    // Fields carry degrees up to l_max; only the covered ones give exactly 1.
    let fields = sphframe_core::HarmonicField::random_batch(12, 5, 7);
    for f in fields {
        let f = f.with_l_max(nf.l_max());
        let q = sphframe_core::frame::rayleigh_quotient(&nf.frame, &f).unwrap();
        assert!((q - 1.0).abs() < 1e-10, "{q}");
    }
}

#[test]
fn scales_two_apart_are_orthogonal() {
    let nf = build_needlet_frame(SpectralFilter::NormalizedCutoff, -4, 0, Convention::Degree).unwrap();
    for (j, k, j2, k2) in [(-4, 3, -2, 0), (-3, 11, -1, 4), (-4, 40, 0, 1)] {
        let a = frame_element(&nf.frame, j, k).unwrap();
        let b = frame_element(&nf.frame, j2, k2).unwrap();
        assert!(a.dot(&b).abs() < 1e-12);
    }
}

#[test]
fn hybrid_ratios_stay_bounded() {
    let a = 2f64.powf(1.0 / 3.0);
    let d: Vec<_> = [4.0, 8.0, 12.0].iter().map(|&n| hybrid_tail_diagnostics(n, a, 32).unwrap()).collect();
    for w in d.windows(2) {
        assert!(w[1].eps3 < w[0].eps3 && w[1].eps4 < w[0].eps4);
    }
    let max3 = d.iter().map(|x| x.ratio3).fold(0.0, f64::max);
    let max4 = d.iter().map(|x| x.ratio4).fold(0.0, f64::max);
    assert!(max3.is_finite() && max4.is_finite());
    assert!(d[2].eps3 < 1e-3);
}

proptest! {
    #[test]
    fn tail_inequality_holds(m in 0.51f64..30.0, b in 0.01f64..10.0, a in 1.01f64..5.0) {
        let (lhs, rhs) = tail_bound_lhs_rhs(m, b, a).unwrap();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn crossing_root_and_bracket(n in 1.0f64..200.0, r in 1.0f64..10.0, l in 1usize..500, a in 1.26f64..6.0) {
        let m = crossing_index(n, r, l, a).unwrap();
        let ll = (l * (l + 1)) as f64;
        let res = a.powf(2.0 * m) * ll - n - r * (-m).max(0.0);
        prop_assert!(res.abs() <= 1e-8 * (n + r * m.abs()));
        let (lo, hi) = crossing_bracket(n, r, l, a);
        prop_assert!(m >= lo - 1e-10 && m <= hi + 1e-10);
    }
}
