use std::f64::consts::PI;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sphframe_core::frame::{
    adequate_window, analyze, element_point, empirical_frame_bounds, operator_norm_estimate, quadratic_form,
    summation_subset, IndexSet,
};
use sphframe_core::geometry::from_angles;
use sphframe_core::kernel::{kernel_profile, Method};
use sphframe_core::needlet::{
    build_needlet_frame, crossing_bracket, crossing_index, hybrid_cut_degree, hybrid_tail_diagnostics,
    needlet_window, tail_bound_lhs_rhs,
};
use sphframe_core::partition::{build_partition, default_greedy_grid, greedy_ball_partition, CubatureRule};
use sphframe_core::spectral::{calderon_constant, daubechies_bounds, sphere_eigenvalue};
use sphframe_core::truncation::{
    bell_field, frequency_bound, measured_truncation_error, spatial_index_set, spatial_truncation_report,
    spectral_tail_norm, Cap,
};
use sphframe_core::{Convention, FrameSpec, HarmonicField, SpectralFilter};

use crate::cli::*;
use crate::config::{parse_list, Config};
use crate::{emit_json, CliError};

fn cube_root_two() -> f64 {
    2f64.powf(1.0 / 3.0)
}

fn filter_of(cfg: &Config, flag: Option<String>) -> Result<SpectralFilter, CliError> {
    let s = cfg.pick(flag, "filter", "mexican:r=1".to_string())?;
    Ok(s.parse()?)
}

fn out_path(flag: &Option<std::path::PathBuf>, cfg: &Config) -> Option<std::path::PathBuf> {
    flag.clone().or_else(|| cfg.raw("out").map(Into::into))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Serialize)]
struct DaubechiesReport {
    filter: String,
    a: f64,
    lower: f64,
    upper: f64,
    ratio: f64,
    calderon: f64,
    reference_level: f64,
}

pub fn daubechies<W: Write>(args: DaubechiesArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let a = cfg.pick(args.a, "a", cube_root_two())?;
    let filter = filter_of(cfg, args.filter)?;
    let grid = cfg.pick(args.grid, "grid", 512usize)?;
    let b = daubechies_bounds(&filter, a, grid)?;
    let report = DaubechiesReport {
        filter: filter.to_string(),
        a,
        lower: b.lower,
        upper: b.upper,
        ratio: b.ratio,
        calderon: calderon_constant(&filter)?,
        reference_level: b.reference_level,
    };
    writeln!(out, "filter = {}", report.filter)?;
    writeln!(out, "a = {a}")?;
    writeln!(out, "A = {:.10}", b.lower)?;
    writeln!(out, "B = {:.10}", b.upper)?;
    writeln!(out, "B/A = {:.4}", b.ratio)?;
    writeln!(out, "B/A (full) = {:.12}", b.ratio)?;
    writeln!(out, "c = {:.12}", report.calderon)?;
    writeln!(out, "c/({} ln a) = {:.10}", filter.order(), b.reference_level)?;
    if let Some(p) = out_path(&args.out, cfg) {
        emit_json(&report, Some(&p), out)?;
    }
    Ok(())
}

pub fn kernel<W: Write>(args: KernelArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let t: f64 = cfg.pick(args.t, "t", 0.1)?;
    let filter = filter_of(cfg, args.filter)?;
    let method = match cfg.pick(args.method, "method", "auto".to_string())?.as_str() {
        "series" => Method::Series,
        "gaussian" => Method::Gaussian,
        "auto" => Method::Auto,
        other => return Err(usage(format!("unknown method `{other}`"))),
    };
    let conv: Convention = match cfg.pick_opt(args.convention, "convention")? {
        Some(s) => s.parse::<Convention>()?,
        None => filter.natural_convention(),
    };
    let n = cfg.pick(args.n, "n", 1001usize)?;
    let tol = cfg.pick(args.tol, "tol", 1e-12)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(usage("t must be a positive number"));
    }
    let profile = kernel_profile(&filter, conv, t, n, method, tol)?;
    let path = out_path(&args.out, cfg);
    let mut rows = csv::Writer::from_writer(Vec::new());
    rows.write_record(["theta", "value", "method", "t", "filter"])?;
    let (m_name, t_s, f_name) = (profile.method.name(), format!("{t}"), filter.to_string());
    for (th, v) in profile.thetas.iter().zip(&profile.values) {
        rows.write_record([&format!("{th:.17e}"), &format!("{v:.17e}"), m_name, &t_s, &f_name])?;
    }
    let bytes = rows.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    let peak = profile.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sign_changes = profile.values.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    // Summary goes to stderr when the CSV itself is on stdout.
    let mut summary = String::new();
    summary += &format!("max = {peak:.10}\nsign_changes = {sign_changes}\n");
    if filter.is_mexican(1) && conv == Convention::Laplacian {
        let s = kernel_profile(&filter, conv, t, n, Method::Series, tol)?;
        let g = kernel_profile(&filter, conv, t, n, Method::Gaussian, tol)?;
        let d = s.values.iter().zip(&g.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        summary += &format!("max_abs_diff_series_gaussian = {d:.6e}\n");
    }
    match path {
        Some(p) => {
            std::fs::write(&p, &bytes)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            out.write_all(&bytes)?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CellRecord {
    center: [f64; 3],
    measure: f64,
    diameter_bound: f64,
}

#[derive(Serialize)]
struct PartitionExport {
    j: i32,
    a: Option<f64>,
    b: Option<f64>,
    cells: Vec<CellRecord>,
}

#[derive(Serialize)]
struct CubatureRow {
    x: f64,
    y: f64,
    z: f64,
    weight: f64,
}

fn cubature<W: Write>(m: usize, path: Option<std::path::PathBuf>, out: &mut W) -> Result<(), CliError> {
    let rule = CubatureRule::new(m)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for ([x, y, z], weight) in rule.nodes() {
        w.serialize(CubatureRow { x, y, z, weight })?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    match path {
        Some(p) => {
            std::fs::write(p, bytes)?;
            writeln!(out, "degree = {m}\nnodes = {}", rule.len())?;
        }
        None => out.write_all(&bytes)?,
    }
    Ok(())
}

pub fn partition<W: Write>(args: PartitionArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    if let Some(m) = cfg.pick_opt(args.cubature, "cubature")? {
        return cubature(m, out_path(&args.out, cfg), out);
    }
    let (part, a, b) = match cfg.pick_opt(args.greedy_t, "greedy_t")? {
        Some(t) => {
            let candidates = cfg.pick(args.candidates, "candidates", 4000usize)?;
            (greedy_ball_partition(t, candidates, default_greedy_grid(t))?, None, None)
        }
        None => {
            let j = cfg.pick(args.j, "j", 0i32)?;
            let a = cfg.pick(args.a, "a", 2.0)?;
            let b = cfg.pick(args.b, "b", 0.5)?;
            (build_partition(j, a, b)?, Some(a), Some(b))
        }
    };
    writeln!(out, "cells = {}", part.len())?;
    writeln!(out, "target = {:.12}", part.target)?;
    writeln!(out, "total_measure = {:.15}", part.total_measure())?;
    writeln!(out, "measure_defect = {:.3e}", part.total_measure() - 4.0 * PI)?;
    writeln!(out, "max_diameter_bound = {:.12}", part.max_diameter_bound())?;
    writeln!(out, "min_measure = {:.12e}", part.min_measure())?;
    match part.achieved_c0() {
        Some(c0) => writeln!(out, "c0 = {c0:.6}")?,
        None => writeln!(out, "c0 = n/a (target above delta0)")?,
    }
    writeln!(out, "maximal = {}", part.is_maximal())?;
    if let Some(p) = out_path(&args.out, cfg) {
        let cells = part
            .cells()
            .map(|c| CellRecord { center: c.center, measure: c.measure, diameter_bound: c.diameter_bound })
            .collect();
        emit_json(&PartitionExport { j: part.j, a, b, cells }, Some(&p), out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CoefficientRow {
    j: i32,
    k: usize,
    center_x: f64,
    center_y: f64,
    center_z: f64,
    measure: f64,
    coefficient: f64,
}

#[derive(Serialize)]
struct FieldRow {
    l: usize,
    q: i64,
    coeff: f64,
}

fn export_first_field(
    spec: &FrameSpec,
    f: &HarmonicField,
    coefficients: Option<&std::path::Path>,
    field: Option<&std::path::Path>,
) -> Result<(), CliError> {
    if let Some(p) = coefficients {
        let mut w = csv::Writer::from_path(p)?;
        for (j, values) in analyze(spec, f)?.scales {
            for (k, &coefficient) in values.iter().enumerate() {
                let ([center_x, center_y, center_z], measure) =
                    element_point(spec, j, k).ok_or_else(|| usage(format!("no element ({j}, {k})")))?;
                w.serialize(CoefficientRow { j, k, center_x, center_y, center_z, measure, coefficient })?;
            }
        }
        w.flush()?;
    }
    if let Some(p) = field {
        let mut w = csv::Writer::from_path(p)?;
        for l in 0..=f.l_max() {
            let l_i = l as i64;
            for q in -l_i..=l_i {
                w.serialize(FieldRow { l, q, coeff: f.get(l, q) })?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FrameReport {
    mode: String,
    filter: String,
    a: f64,
    b: f64,
    l_max: usize,
    j_range: (i32, i32),
    trials: usize,
    seed: u64,
    elements: usize,
    #[serde(rename = "A_emp")]
    a_emp: f64,
    #[serde(rename = "B_emp")]
    b_emp: f64,
    ratio: f64,
    #[serde(rename = "A_theory")]
    a_theory: f64,
    #[serde(rename = "B_theory")]
    b_theory: f64,
}

pub fn frame_verify<W: Write>(args: FrameVerifyArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let l_max = cfg.pick(args.l_max, "l_max", 16usize)?;
    let trials = cfg.pick(args.trials, "trials", 20usize)?;
    let seed = cfg.pick(args.seed, "seed", 1u64)?;
    let needlet = args.needlet || cfg.pick(None, "needlet", false)?;
    let (spec, mode, a_theory, b_theory) = if needlet {
        let conv: Convention = cfg.pick(None, "convention", "degree".to_string())?.parse()?;
        let (lo, hi) = needlet_window(l_max, conv)?;
        let lo = cfg.pick(args.j_min, "j_min", lo)?;
        let hi = cfg.pick(args.j_max, "j_max", hi)?;
        let nf = build_needlet_frame(SpectralFilter::NormalizedCutoff, lo, hi, conv)?;
        let mut spec = nf.frame;
        spec.l_max = spec.l_max.max(l_max);
        (spec, "needlet", 1.0, 1.0)
    } else {
        let a = cfg.pick(args.a, "a", cube_root_two())?;
        let b = cfg.pick(args.b, "b", 0.5)?;
        let filter = filter_of(cfg, args.filter)?;
        let eps = cfg.pick(args.eps, "eps", 2e-3)?;
        let (lo, hi) = match (cfg.pick_opt(args.j_min, "j_min")?, cfg.pick_opt(args.j_max, "j_max")?) {
            (Some(lo), Some(hi)) => (lo, hi),
            (lo, hi) => {
                let (wl, wh) = adequate_window(&filter, a, l_max, eps)?;
                (lo.unwrap_or(wl), hi.unwrap_or(wh))
            }
        };
        let bounds = daubechies_bounds(&filter, a, 256)?;
        (FrameSpec::new(filter, a, b, (lo, hi), l_max)?, "partition", bounds.lower, bounds.upper)
    };
    let field_l = if needlet { l_max } else { spec.l_max };
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    if trials == 0 {
        return Err(usage("trials must be at least 1"));
    }
    for (i, f) in HarmonicField::random_batch(field_l, trials, seed).into_iter().enumerate() {
        let f = f.with_l_max(spec.l_max);
        if i == 0 {
            export_first_field(&spec, &f, args.coefficients.as_deref(), args.field.as_deref())?;
        }
        let q = quadratic_form(&spec, &f, &IndexSet::all(&spec))? / f.norm_sq();
        min = min.min(q);
        max = max.max(q);
    }
    let report = FrameReport {
        mode: mode.into(),
        filter: spec.filter.to_string(),
        a: spec.a,
        b: spec.b,
        l_max: field_l,
        j_range: spec.j_range(),
        trials,
        seed,
        elements: spec.element_count(),
        a_emp: min,
        b_emp: max,
        ratio: max / min,
        a_theory,
        b_theory,
    };
    emit_json(&report, out_path(&args.out, cfg).as_deref(), out)?;
    if out_path(&args.out, cfg).is_some() {
        writeln!(out, "A_emp = {min:.10}\nB_emp = {max:.10}\nratio = {:.10}", max / min)?;
    }
    if !(min > 0.0) {
        return Err(CliError::Verify(format!("A_emp = {min} is not positive")));
    }
    Ok(())
}

#[derive(Serialize)]
struct FieldTruncation {
    field: usize,
    f_norm: f64,
    tail_norm: f64,
    measured_error: f64,
    bound_without_c0b: f64,
    required_c0: f64,
}

#[derive(Serialize)]
struct BoundPoint {
    m: i32,
    n: i32,
    bound_without_c0b: f64,
}

#[derive(Serialize)]
struct TruncationReport {
    seed: u64,
    l_max: usize,
    a: f64,
    b: f64,
    j_range: (i32, i32),
    m: i32,
    n: i32,
    big_l: f64,
    vanishing_order: u32,
    decay_order: u32,
    c_prime_l: f64,
    c_prime_j: f64,
    m_j: f64,
    b_a: f64,
    b_emp: f64,
    c0_est: f64,
    max_error_over_b_emp_norm: f64,
    fields: Vec<FieldTruncation>,
    bound_sweep: Vec<BoundPoint>,
}

pub fn truncation<W: Write>(args: TruncationArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let a = cfg.pick(args.a, "a", cube_root_two())?;
    let b = cfg.pick(args.b, "b", 1.0)?;
    let l_max = cfg.pick(args.l_max, "l_max", 8usize)?;
    let eps = cfg.pick(args.eps, "eps", 1e-6)?;
    let extra = cfg.pick(args.extra, "extra", 3i32)?;
    let l = cfg.pick(args.vanishing, "vanishing", 1u32)?;
    let jd = cfg.pick(args.decay, "decay", 2u32)?;
    let trials = cfg.pick(args.trials, "trials", 5usize)?;
    let seed = cfg.pick(args.seed, "seed", 1u64)?;
    let filter = SpectralFilter::Mexican(1);
    let (w_lo, w_hi) = adequate_window(&filter, a, l_max, eps)?;
    let m = cfg.pick(args.m, "m", -w_lo)?;
    let n = cfg.pick(args.n, "n", w_hi)?;
    let mut lo = (-m).min(w_lo);
    while lo > (-m).min(w_lo) - extra && build_partition(lo - 1, a, b).is_ok() {
        lo -= 1;
    }
    let hi = n.max(w_hi) + extra;
    let spec = FrameSpec::new(filter, a, b, (lo, hi), l_max)?;
    let big_l = sphere_eigenvalue(l_max);
    let b_emp = empirical_frame_bounds(&spec, trials.max(1), seed ^ 0x5eed)?.max;
    let mut fields = Vec::new();
    let mut c0_est: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for (i, f) in HarmonicField::random_batch(l_max, trials, seed).iter().enumerate() {
        let tail = spectral_tail_norm(f, big_l);
        let err = measured_truncation_error(&spec, f, m, n)?;
        let mut r = frequency_bound(&spec, l, jd, big_l, m, n, tail, f.norm())?;
        r.measured_error = Some(err);
        let c0 = r.required_c0(b).unwrap_or(0.0);
        c0_est = c0_est.max(c0);
        worst = worst.max(err / (b_emp * f.norm()));
        fields.push(FieldTruncation {
            field: i,
            f_norm: f.norm(),
            tail_norm: tail,
            measured_error: err,
            bound_without_c0b: r.bound_without_c0b,
            required_c0: c0,
        });
    }
    let base = frequency_bound(&spec, l, jd, big_l, m, n, 0.0, 1.0)?;
    let mut bound_sweep = Vec::new();
    let steps = (1..=4).flat_map(|k| [(m + k, n), (m, n + k)]);
    for (mm, nn) in std::iter::once((m, n)).chain(steps) {
        let r = frequency_bound(&spec, l, jd, big_l, mm, nn, 0.0, 1.0)?;
        bound_sweep.push(BoundPoint { m: mm, n: nn, bound_without_c0b: r.bound_without_c0b });
    }
    let report = TruncationReport {
        seed,
        l_max,
        a,
        b,
        j_range: (lo, hi),
        m,
        n,
        big_l,
        vanishing_order: l,
        decay_order: jd,
        c_prime_l: base.c_prime_l,
        c_prime_j: base.c_prime_j,
        m_j: base.m_j,
        b_a: base.b_a,
        b_emp,
        c0_est,
        max_error_over_b_emp_norm: worst,
        fields,
        bound_sweep,
    };
    emit_json(&report, out_path(&args.out, cfg).as_deref(), out)
}

#[derive(Serialize)]
struct SpatialPoint {
    c: f64,
    selected: usize,
    total: usize,
    measured_error: f64,
    complement_energy: f64,
    complement_norm_sq: f64,
    structural_factor: f64,
    leakage: f64,
    ratio: f64,
    chain_holds: bool,
}

#[derive(Serialize)]
struct SpatialOutput {
    seed: u64,
    l_max: usize,
    a: f64,
    b: f64,
    j_range: (i32, i32),
    cap_theta: f64,
    cap_phi: f64,
    cap_radius: f64,
    i_decay: f64,
    field: String,
    b_emp: f64,
    b_power: f64,
    sweep: Vec<SpatialPoint>,
}

pub fn spatial<W: Write>(args: SpatialArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let a = cfg.pick(args.a, "a", 2.0)?;
    let b = cfg.pick(args.b, "b", 0.5)?;
    let l_max = cfg.pick(args.l_max, "l_max", 16usize)?;
    let eps = cfg.pick(args.eps, "eps", 1e-3)?;
    let theta = cfg.pick(args.cap_theta, "cap_theta", 0.6435)?;
    let phi = cfg.pick(args.cap_phi, "cap_phi", 0.6435)?;
    let radius = cfg.pick(args.cap_radius, "cap_radius", 0.4)?;
    let cs: Vec<f64> = parse_list(&cfg.pick(args.c, "c", "0.25,0.5,1,2,4,8".to_string())?)?;
    let i_decay = cfg.pick(args.i_decay, "i_decay", 3.0)?;
    let width = cfg.pick(args.width, "width", 0.15)?;
    let seed = cfg.pick(args.seed, "seed", 1u64)?;
    if cs.iter().any(|&c| !(c > 0.0)) {
        return Err(usage("every c_j must be positive"));
    }
    let filter = SpectralFilter::Mexican(1);
    let (lo, hi) = adequate_window(&filter, a, l_max, eps)?;
    let spec = FrameSpec::new(filter, a, b, (lo, hi), l_max)?;
    let center = from_angles(theta, phi);
    let cap = Cap::new(center, radius);
    let (field, label) = if width > 0.0 {
        (bell_field(l_max, &center, width)?, format!("bell(width={width})"))
    } else {
        (HarmonicField::random_batch(l_max, 1, seed).remove(0), format!("random(seed={seed})"))
    };
    let b_emp = empirical_frame_bounds(&spec, 10, seed)?.max;
    let b_power = operator_norm_estimate(&spec, 40, seed)?;
    let all = IndexSet::all(&spec);
    let mut sweep = Vec::new();
    for &c in &cs {
        let r = spatial_truncation_report(&spec, &field, &cap, |_| c, i_decay, b_emp)?;
        let rest = all.minus(&spatial_index_set(&spec, &cap, |_| c));
        let v = summation_subset(&spec, &field, &rest)?.norm_sq();
        sweep.push(SpatialPoint {
            c,
            selected: r.selected,
            total: r.total,
            measured_error: r.measured_error,
            complement_energy: r.complement_energy,
            complement_norm_sq: v,
            structural_factor: r.structural_factor,
            leakage: r.leakage,
            ratio: r.ratio,
            chain_holds: v <= b_emp * r.complement_energy * (1.0 + 1e-12),
        });
    }
    let report = SpatialOutput {
        seed,
        l_max,
        a,
        b,
        j_range: (lo, hi),
        cap_theta: theta,
        cap_phi: phi,
        cap_radius: radius,
        i_decay,
        field: label,
        b_emp,
        b_power,
        sweep,
    };
    emit_json(&report, out_path(&args.out, cfg).as_deref(), out)
}

#[derive(Serialize)]
struct DiagRow {
    big_n: f64,
    r: f64,
    eps3: f64,
    eps4: f64,
    ratio3: f64,
    ratio4: f64,
    cut_degree_j1: u64,
}

#[derive(Serialize)]
struct SweepSummary {
    trials: usize,
    violations: usize,
    max_ratio: f64,
}

#[derive(Serialize)]
struct NeedletDiagOutput {
    seed: u64,
    a: f64,
    l_max: usize,
    diagnostics: Vec<DiagRow>,
    intminf: SweepSummary,
    crossing: SweepSummary,
}

pub fn needlet_diag<W: Write>(args: NeedletDiagArgs, cfg: &Config, out: &mut W) -> Result<(), CliError> {
    let a = cfg.pick(args.a, "a", cube_root_two())?;
    let ns: Vec<f64> = parse_list(&cfg.pick(args.n_values, "n_values", "4,8,12".to_string())?)?;
    let l_max = cfg.pick(args.l_max, "l_max", 32usize)?;
    let trials = cfg.pick(args.trials, "trials", 50usize)?;
    let seed = cfg.pick(args.seed, "seed", 1u64)?;
    let mut diagnostics = Vec::new();
    for &n in &ns {
        let d = hybrid_tail_diagnostics(n, a, l_max)?;
        diagnostics.push(DiagRow {
            big_n: n,
            r: d.r,
            eps3: d.eps3,
            eps4: d.eps4,
            ratio3: d.ratio3,
            ratio4: d.ratio4,
            cut_degree_j1: hybrid_cut_degree(1, n, a)?,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intminf = SweepSummary { trials, violations: 0, max_ratio: 0.0 };
    for _ in 0..trials {
        let m = rng.random_range(0.5..20.0f64).max(0.500_001);
        let b = rng.random_range(0.05..5.0);
        let aa = rng.random_range(1.05..4.0);
        let (lhs, rhs) = tail_bound_lhs_rhs(m, b, aa)?;
        intminf.violations += usize::from(lhs > rhs);
        intminf.max_ratio = intminf.max_ratio.max(lhs / rhs);
    }
    let mut crossing = SweepSummary { trials, violations: 0, max_ratio: 0.0 };
    for _ in 0..trials {
        let n = rng.random_range(1.0..100.0);
        let r = rng.random_range(1.0..10.0);
        let l = rng.random_range(1..=200usize);
        let aa = rng.random_range(1.25..4.0);
        let m = crossing_index(n, r, l, aa)?;
        let (lo, hi) = crossing_bracket(n, r, l, aa);
        crossing.violations += usize::from(m < lo - 1e-10 || m > hi + 1e-10);
        // Position inside the bracket, 0 at the lower end and 1 at the upper.
        if hi > lo {
            crossing.max_ratio = crossing.max_ratio.max((m - lo) / (hi - lo));
        }
    }
    let violations = intminf.violations + crossing.violations;
    let report = NeedletDiagOutput { seed, a, l_max, diagnostics, intminf, crossing };
    emit_json(&report, out_path(&args.out, cfg).as_deref(), out)?;
    if violations > 0 {
        return Err(CliError::Verify(format!("{violations} inequality violations")));
    }
    Ok(())
}

pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Daubechies(a) => daubechies(a, &cfg, out),
        Command::KernelProfile(a) => kernel(a, &cfg, out),
        Command::Partition(a) => partition(a, &cfg, out),
        Command::FrameVerify(a) => frame_verify(a, &cfg, out),
        Command::Truncation(a) => truncation(a, &cfg, out),
        Command::Spatial(a) => spatial(a, &cfg, out),
        Command::NeedletDiag(a) => needlet_diag(a, &cfg, out),
    }
}
