use proptest::prelude::*;

use sphframe_core::frame::{
    analyze, empirical_frame_bounds, operator_norm_estimate, quadratic_form, rayleigh_quotient, summation_operator, summation_subset,
    IndexSet, Selection,
};
use sphframe_core::truncation::{spatial_index_set, Cap};
use sphframe_core::{FrameSpec, HarmonicField, SpectralFilter};

fn spec() -> FrameSpec {
    FrameSpec::new(SpectralFilter::Mexican(1), 2f64.powf(1.0 / 3.0), 0.5, (-9, 2), 10).unwrap()
}

#[test]
fn analysis_energy_is_the_quadratic_form() {
    let s = spec();
    for f in HarmonicField::random_batch(10, 3, 1) {
        let e = analyze(&s, &f).unwrap().energy();
        let q = quadratic_form(&s, &f, &IndexSet::all(&s)).unwrap();
        let sf = summation_operator(&s, &f).unwrap();
        assert!((e - q).abs() < 1e-12 * q);
        assert!((sf.dot(&f) - q).abs() < 1e-12 * q);
    }
}

#[test]
fn fresh_fields_stay_inside_recorded_bounds_up_to_sampling() {
    let s = spec();
    let b = empirical_frame_bounds(&s, 30, 4).unwrap();
    assert!(b.min > 0.0 && b.ratio >= 1.0);
    // Fresh fields: quotients cluster around the recorded range.
    for f in HarmonicField::random_batch(10, 10, 99) {
        let q = rayleigh_quotient(&s, &f).unwrap();
        assert!(q > 0.9 * b.min && q < 1.1 * b.max, "{q} {b:?}");
    }
}

#[test]
fn summation_is_symmetric() {
    let s = spec();
    let fs = HarmonicField::random_batch(10, 2, 8);
    let a = summation_operator(&s, &fs[0]).unwrap().dot(&fs[1]);
    let b = summation_operator(&s, &fs[1]).unwrap().dot(&fs[0]);
    assert!((a - b).abs() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn subset_forms_are_monotone_and_obey_the_norm_chain(
        seed in 0u64..1000,
        lat in -1.0f64..1.0,
        lon in 0.0f64..std::f64::consts::TAU,
        radius in 0.05f64..1.5,
        c in 0.1f64..4.0,
    ) {
        let s = spec();
        let f = HarmonicField::random_batch(10, 1, seed).remove(0);
        let z = lat;
        let r = (1.0 - z * z).sqrt();
        let cap = Cap::new([r * lon.cos(), r * lon.sin(), z], radius);
        let small = spatial_index_set(&s, &cap, |_| c);
        let large = spatial_index_set(&s, &cap, |_| 2.0 * c);
        prop_assert!(small.is_subset_of(&large, &s));
        let all = IndexSet::all(&s);
        let q_small = quadratic_form(&s, &f, &all.minus(&small)).unwrap();
        let q_large = quadratic_form(&s, &f, &all.minus(&large)).unwrap();
        prop_assert!(q_small >= q_large - 1e-14);
        let total = quadratic_form(&s, &f, &all).unwrap();
        let q_in = quadratic_form(&s, &f, &small).unwrap();
        prop_assert!(q_in <= total + 1e-14);
        prop_assert!((q_in + q_small - total).abs() < 1e-12);
        // ‖S_I F‖² ≤ ‖S‖ ⟨S_I F, F⟩; power iteration approaches ‖S‖ from below.
        let b = operator_norm_estimate(&s, 60, 1).unwrap();
        let v = summation_subset(&s, &f, &small).unwrap().norm_sq();
        prop_assert!(v <= 1.01 * b * q_in + 1e-15, "{} {}", v, b * q_in);
    }

    #[test]
    fn cell_selection_matches_mask_count(seed in 0u64..100) {
        let s = spec();
        let cap = Cap::new([0.0, 1.0, 0.0], 0.5);
        let set = spatial_index_set(&s, &cap, |_| 1.0 + (seed % 3) as f64);
        let n: usize = set
            .scales
            .iter()
            .zip(&s.scales)
            .map(|(sel, sc)| match sel {
                Selection::All => sc.len(),
                Selection::Nothing => 0,
                Selection::Cells(m) => m.iter().filter(|&&b| b).count(),
            })
            .sum();
        prop_assert_eq!(n, set.count(&s));
    }
}
