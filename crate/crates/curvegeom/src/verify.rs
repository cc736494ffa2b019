//! The named self-check suite behind `curvegeom verify`.
//!
//! Every check builds deterministic instances from the master seed (each
//! check mixes its own name into the stream, so checks are independent of
//! execution order), measures residuals, and compares them against the
//! tolerances pinned here. Seeds only perturb which random curves are drawn;
//! a seed change must never flip a verdict, so instance pickers scan
//! candidate sub-seeds until the documented admissibility filters pass.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cones::{
    chord_deviation, circularity_check, cone_geodesic, euler_lagrange_residual,
    geodesic_check_with_tol, make_cone, slant_helix_check, unroll_2cone, Cone,
};
use crate::correspondence::{
    curve_from_curvatures, measure_profile, rectifying_equation_residual_3d,
    rectifying_equation_residual_4d, rectifying_to_spherical, spherical_equation_residual_3d,
    spherical_to_rectifying_default, CurvatureProfile, ProfileSide,
};
use crate::curve::{
    random_fourier_curve, random_spherical_curve, sample_jets, CurveSpec, SampledCurve,
};
use crate::frames::{
    classify_rm_normal, coordinate_functions, frenet_apparatus, frenet_equation_residual,
    integrate_coordinate_ode, rm_frame, rm_residuals, FrameTag, Verdict,
};
use crate::linalg::{fit_constant_direction, EuclVec};
use crate::numeric::fd;
use crate::rectify::{
    check_rectifying, check_rectifying_with_tol, check_j_rectifying, construct_rectifying,
    find_vertex, sample_unit_speed,
};
use crate::tolerances::{
    TOL_CIRCULAR, TOL_CLASSIFY, TOL_FRAME_ORTHONORMAL, TOL_GEO_ANALYTIC, TOL_RECT_ANALYTIC,
    TOL_RM, TOL_SLANT,
};
use crate::{Error, Result};

/// Suite configuration: the master seed plus optional tolerance overrides
/// for the rectifying and geodesic detectors.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol_rect: Option<f64>,
    pub tol_geo: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            tol_rect: None,
            tol_geo: None,
        }
    }
}

impl VerifyConfig {
    fn tol_rect(&self) -> f64 {
        self.tol_rect.unwrap_or(TOL_RECT_ANALYTIC)
    }
    fn tol_geo(&self) -> f64 {
        self.tol_geo.unwrap_or(TOL_GEO_ANALYTIC)
    }
}

/// One named check: worst measured residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

/// Full suite outcome; timings live apart from the deterministic check data.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutcome {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
    pub timings_ms: BTreeMap<String, u64>,
}

/// All check names, sorted; `run_all` reports in this order.
pub const CHECK_NAMES: [&str; 14] = [
    "3d-eq",
    "4d-eq",
    "C2-hyperdim",
    "EL-residual",
    "L1-rho",
    "L2-exclusion",
    "P1-circular",
    "T1-equiv",
    "T2-geodesic",
    "T3-slant",
    "T4-jrect",
    "T5-map",
    "T6-rm",
    "frame-hygiene",
];

pub fn run_all(config: &VerifyConfig) -> VerifyOutcome {
    let mut checks = Vec::with_capacity(CHECK_NAMES.len());
    let mut timings_ms = BTreeMap::new();
    for name in CHECK_NAMES {
        let start = Instant::now();
        let result = run_check(name, config);
        timings_ms.insert(name.to_string(), start.elapsed().as_millis() as u64);
        checks.push(result);
    }
    let all_passed = checks.iter().all(|c| c.passed);
    VerifyOutcome {
        seed: config.seed,
        checks,
        all_passed,
        timings_ms,
    }
}

/// Run a single named check; unknown names report as failed.
pub fn run_check(name: &str, config: &VerifyConfig) -> CheckResult {
    let outcome = match name {
        "3d-eq" => check_3d_eq(config),
        "4d-eq" => check_4d_eq(config),
        "C2-hyperdim" => check_c2_hyperdim(config),
        "EL-residual" => check_el_residual(config),
        "L1-rho" => check_l1_rho(config),
        "L2-exclusion" => check_l2_exclusion(config),
        "P1-circular" => check_p1_circular(config),
        "T1-equiv" => check_t1_equiv(config),
        "T2-geodesic" => check_t2_geodesic(config),
        "T3-slant" => check_t3_slant(config),
        "T4-jrect" => check_t4_jrect(config),
        "T5-map" => check_t5_map(config),
        "T6-rm" => check_t6_rm(config),
        "frame-hygiene" => check_frame_hygiene(config),
        other => {
            return CheckResult {
                name: other.to_string(),
                passed: false,
                residual: 0.0,
                tolerance: 0.0,
                detail: format!("unknown check `{other}`"),
            }
        }
    };
    match outcome {
        Ok(mut result) => {
            result.name = name.to_string();
            result
        }
        Err(err) => CheckResult {
            name: name.to_string(),
            passed: false,
            residual: 0.0,
            tolerance: 0.0,
            detail: format!("check aborted: {err}"),
        },
    }
}

// ---------------------------------------------------------------------------
// deterministic instance machinery

fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in label.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ hash)
}

/// A unit-speed random spherical profile with total length at least
/// `min_len`, found by scanning sub-seeds drawn from the check's stream.
fn pick_profile(rng: &mut ChaCha8Rng, n: usize, modes: usize, min_len: f64) -> Result<CurveSpec> {
    for _ in 0..64 {
        let seed = rng.next_u64() >> 32;
        let Ok(raw) = random_spherical_curve(n, seed, modes) else {
            continue;
        };
        let Ok(unit) = raw.reparameterized_by_arc_length(raw.default_domain()) else {
            continue;
        };
        if unit.default_domain().1 >= min_len {
            return Ok(unit);
        }
    }
    Err(Error::NonRegularSeed)
}

struct RectifyingInstance {
    spec: CurveSpec,
    vertex: EuclVec,
    a: f64,
    window: (f64, f64),
}

/// A constructed rectifying curve over a random unit-speed profile. The
/// window keeps clear of the secant asymptotes and of the profile boundary;
/// `positive_side` restricts to t > t0 so that s + b stays positive (needed
/// by the curvature transport).
fn rectifying_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    positive_side: bool,
) -> Result<RectifyingInstance> {
    let profile = pick_profile(rng, n, 2, 1.8)?;
    let (_, total) = profile.default_domain();
    let t0 = total / 2.0;
    let a = rng.random_range(0.5..2.0);
    let vertex = EuclVec::from_vec_unchecked(
        (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
    );
    let spec = construct_rectifying(&profile, &vertex, a, t0)?;
    let half = 0.75f64.min(total / 2.0 - 0.05);
    let window = if positive_side {
        (t0 + 0.05, t0 + half)
    } else {
        (t0 - half, t0 + half)
    };
    Ok(RectifyingInstance {
        spec,
        vertex,
        a,
        window,
    })
}

/// Unit-speed sampled curve over a sub-window where the curve is twisted
/// with |τ| above `min_tau` and all curvatures below `max_kappa`.
fn twisted_window(
    unit_spec: &CurveSpec,
    jet_order: usize,
    min_tau: f64,
    max_kappa: f64,
    min_width: f64,
    count: usize,
) -> Result<SampledCurve> {
    let sweep = sample_jets(unit_spec, unit_spec.default_domain(), 501, jet_order)?;
    let apparatus = frenet_apparatus(&sweep)?;
    if !apparatus.twisted {
        let (sample, rank) = apparatus.first_deficiency.unwrap_or((0, 0));
        return Err(Error::RankDeficient { sample, rank });
    }
    let last = apparatus.curvatures.len() - 1;
    let ok = |i: usize| -> bool {
        apparatus.curvatures[last][i].abs() > min_tau
            && apparatus
                .curvatures
                .iter()
                .all(|row| row[i].abs() < max_kappa)
    };
    let (mut best, mut cur, mut start, mut range) = (0usize, 0usize, 0usize, None);
    for i in 0..sweep.len() {
        if ok(i) {
            if cur == 0 {
                start = i;
            }
            cur += 1;
            if cur > best {
                best = cur;
                range = Some((start, i));
            }
        } else {
            cur = 0;
        }
    }
    let Some((lo, hi)) = range else {
        return Err(Error::TorsionVanishes { sample: 0 });
    };
    let (s_lo, s_hi) = (sweep.s()[lo], sweep.s()[hi]);
    if s_hi - s_lo < min_width {
        return Err(Error::TorsionVanishes { sample: lo });
    }
    sample_jets(unit_spec, (s_lo, s_hi), count, jet_order)
}

/// Pick a random spherical curve whose Frenet data admits a twisted window.
fn pick_twisted_spherical(
    rng: &mut ChaCha8Rng,
    n: usize,
    modes: usize,
    min_tau: f64,
    max_kappa: f64,
    min_width: f64,
    count: usize,
    jet_order: usize,
) -> Result<(CurveSpec, SampledCurve)> {
    for _ in 0..64 {
        let seed = rng.next_u64() >> 32;
        let Ok(raw) = random_spherical_curve(n, seed, modes) else {
            continue;
        };
        let Ok(unit) = raw.reparameterized_by_arc_length(raw.default_domain()) else {
            continue;
        };
        // cheap spikiness probe before the full Frenet sweep: for a
        // unit-speed spherical curve ‖β''‖ tracks the leading curvature
        if !tame_profile(&unit, max_kappa) {
            continue;
        }
        if let Ok(curve) =
            twisted_window(&unit, jet_order, min_tau, max_kappa, min_width, count)
        {
            return Ok((unit, curve));
        }
    }
    Err(Error::NonRegularSeed)
}

fn tame_profile(unit: &CurveSpec, max_kappa: f64) -> bool {
    let analytic = unit.analytic().expect("unit-speed spec is builtin");
    let (lo, hi) = unit.default_domain();
    for i in 0..=48 {
        let t = lo + (hi - lo) * i as f64 / 48.0;
        if analytic.eval_jets(t, 2)[2].norm() > max_kappa {
            return false;
        }
    }
    true
}

/// Apply an isometric embedding (orthonormal rows mapping E^m into E^n plus
/// an offset) to a sampled curve; jets transform linearly.
fn embed_sampled(curve: &SampledCurve, rows: &[EuclVec], offset: &EuclVec) -> SampledCurve {
    let apply = |v: &EuclVec| -> EuclVec {
        EuclVec::from_vec_unchecked(rows.iter().map(|r| r.dot(v)).collect())
    };
    let points = curve
        .points()
        .iter()
        .map(|p| apply(p).add_scaled(offset, 1.0))
        .collect();
    let jets = (0..curve.len())
        .map(|i| {
            (1..=curve.jet_order())
                .map(|k| apply(curve.jet(i, k)))
                .collect()
        })
        .collect();
    SampledCurve::from_parts(curve.s().to_vec(), points, jets, curve.jet_source())
}

/// Rows of a uniformly random special-orthogonal matrix.
fn random_rotation(rng: &mut ChaCha8Rng, n: usize) -> Vec<EuclVec> {
    use nalgebra::DMatrix;
    let m = DMatrix::<f64>::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..n {
            q[(i, n - 1)] = -q[(i, n - 1)];
        }
    }
    (0..n)
        .map(|i| EuclVec::from_vec_unchecked((0..n).map(|j| q[(i, j)]).collect()))
        .collect()
}

fn result(
    passed: bool,
    residual: f64,
    tolerance: f64,
    detail: impl Into<String>,
) -> Result<CheckResult> {
    Ok(CheckResult {
        name: String::new(),
        passed,
        residual,
        tolerance,
        detail: detail.into(),
    })
}

// ---------------------------------------------------------------------------
// the checks

/// Four equivalent rectifying conditions hold simultaneously on 30
/// constructed curves in E^3..E^5.
fn check_t1_equiv(config: &VerifyConfig) -> Result<CheckResult> {
    let tol = config.tol_rect();
    let mut rng = rng_for(config.seed, "T1-equiv");
    let mut worst_cond = 0.0f64;
    let mut worst_gap = 0.0f64;
    let mut count = 0;
    for n in [3usize, 4, 5] {
        for _ in 0..10 {
            let inst = rectifying_instance(&mut rng, n, false)?;
            let curve = sample_unit_speed(&inst.spec, inst.window, 801, 2)?;
            let report = check_rectifying_with_tol(&curve, &inst.vertex, tol)?;
            worst_cond = worst_cond
                .max(report.cond1_residual)
                .max(report.cond2_residual)
                .max(report.cond4_residual);
            worst_gap = worst_gap.max((inst.a * inst.a - (report.c - report.b * report.b)).abs());
            count += 1;
        }
    }
    let passed = worst_cond < tol && worst_gap < 1e-8;
    result(
        passed,
        worst_cond,
        tol,
        format!("{count} curves; worst condition residual; |a² − (c − b²)| ≤ {worst_gap:.2e} (tol 1e-8)"),
    )
}

/// u(t) = a sec(t − t0) satisfies the Euler-Lagrange equation on 1000-point
/// grids for 10 random draws.
fn check_el_residual(config: &VerifyConfig) -> Result<CheckResult> {
    let tol = 1e-8;
    let mut rng = rng_for(config.seed, "EL-residual");
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let a = rng.random_range(0.5..1.0);
        let t0 = rng.random_range(-1.0..1.0);
        let n = 1000;
        let h = 1.2 / (n - 1) as f64;
        let u: Vec<f64> = (0..n)
            .map(|i| a / (t0 - 0.6 + i as f64 * h - t0).cos())
            .collect();
        let (_, max) = euler_lagrange_residual(&u, h)?;
        worst = worst.max(max);
    }
    result(
        worst < tol,
        worst,
        tol,
        "10 draws of a sec(t − t0), a ∈ [0.5, 1), 1000-point grids on ±0.6",
    )
}

/// Constructed rectifying curves are cone geodesics and vice versa; the flat
/// development maps geodesics to straight lines and preserves length.
fn check_t2_geodesic(config: &VerifyConfig) -> Result<CheckResult> {
    let tol_geo = config.tol_geo();
    let tol_rect = config.tol_rect();
    let mut rng = rng_for(config.seed, "T2-geodesic");
    let mut worst_geo = 0.0f64;
    let mut worst_rect = 0.0f64;
    let mut worst_chord = 0.0f64;
    let mut worst_len = 0.0f64;

    let mut cones: Vec<Cone> = Vec::new();
    let small = CurveSpec::builtin(crate::curve::AnalyticCurve::SmallCircleSphere {
        phi: 0.7,
        dim: 3,
    });
    cones.push(make_cone(&EuclVec::zeros(3), small)?);
    for n in [3usize, 4] {
        let profile = pick_profile(&mut rng, n, 2, 1.8)?;
        let vertex = EuclVec::from_vec_unchecked(
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
        );
        cones.push(make_cone(&vertex, profile)?);
    }

    for cone in &cones {
        let (plo, phi) = cone.profile().default_domain();
        let t0 = 0.5 * (plo + phi);
        let a = rng.random_range(0.6..1.6);
        let half = 0.7f64.min((phi - plo) / 2.0 - 0.05);
        let window = (t0 - half, t0 + half);

        // cone_geodesic output is rectifying
        let geo_spec = cone_geodesic(cone, a, t0, window)?;
        let geo_curve = sample_unit_speed(&geo_spec, window, 801, 2)?;
        let rect = check_rectifying_with_tol(&geo_curve, cone.vertex(), tol_rect)?;
        worst_rect = worst_rect
            .max(rect.cond1_residual)
            .max(rect.cond2_residual)
            .max(rect.cond4_residual);

        // construct_rectifying output passes the geodesic check
        let rect_spec = construct_rectifying(cone.profile(), cone.vertex(), a, t0)?;
        let rect_curve = sample_unit_speed(&rect_spec, window, 801, 2)?;
        let geo = geodesic_check_with_tol(&rect_curve, cone.vertex(), tol_geo)?;
        worst_geo = worst_geo.max(geo.normality_residual);

        // development: straight image, length preserved
        let flat = unroll_2cone(cone, &geo_curve)?;
        worst_chord = worst_chord.max(chord_deviation(flat.points()));
        let speeds: Vec<f64> = (0..flat.len()).map(|i| flat.jet(i, 1).norm()).collect();
        let image_len = crate::numeric::quad::cumulative_simpson(&speeds, flat.step())
            .last()
            .copied()
            .unwrap();
        let input_len = geo_curve.s().last().unwrap() - geo_curve.s()[0];
        worst_len = worst_len.max((image_len - input_len).abs());
    }

    let passed = worst_geo < tol_geo
        && worst_rect < tol_rect
        && worst_chord < 1e-6
        && worst_len < 1e-8;
    result(
        passed,
        worst_geo.max(worst_rect),
        tol_geo,
        format!(
            "{} cones; chord deviation ≤ {worst_chord:.2e} (tol 1e-6), length error ≤ {worst_len:.2e} (tol 1e-8)",
            cones.len()
        ),
    )
}

/// (ρ²)' = 2 A_0 and the coordinate ODE matches direct projections on 20
/// random twisted curves in E^4/E^5.
fn check_l1_rho(config: &VerifyConfig) -> Result<CheckResult> {
    let tol = 1e-6;
    let mut rng = rng_for(config.seed, "L1-rho");
    let mut worst_rho = 0.0f64;
    let mut worst_ode = 0.0f64;
    for n in [4usize, 5] {
        for _ in 0..10 {
            let (_, curve) =
                pick_twisted_spherical(&mut rng, n, 2, 0.05, 4.0, 0.8, 2001, n)?;
            let p = EuclVec::from_vec_unchecked(
                (0..n).map(|_| rng.random_range(-1.5..1.5)).collect(),
            );
            let apparatus = frenet_apparatus(&curve)?;
            let field = apparatus.frame_field()?;
            let coords = coordinate_functions(&curve, field, &p, FrameTag::Frenet)?;

            let rho_sq: Vec<f64> = coords.rho.iter().map(|r| r * r).collect();
            let drho = fd::derivative_uniform(&rho_sq, curve.step(), 1);
            for i in 0..curve.len() {
                worst_rho = worst_rho.max((drho[i] - 2.0 * coords.a[i][0]).abs());
            }

            let moving = apparatus.to_moving_frame()?;
            let integrated =
                integrate_coordinate_ode(&moving.coefficients, curve.s(), &coords.a[0])?;
            for i in 0..curve.len() {
                for j in 0..n {
                    worst_ode = worst_ode.max((integrated[i][j] - coords.a[i][j]).abs());
                }
            }
        }
    }
    let passed = worst_rho < tol && worst_ode < tol;
    result(
        passed,
        worst_rho.max(worst_ode),
        tol,
        format!("20 curves; |(ρ²)' − 2A_0| ≤ {worst_rho:.2e}, ODE vs projection ≤ {worst_ode:.2e}"),
    )
}

/// j-rectifying positives at j ∈ {0, 1, m+1} fire on both symptoms.
fn check_t4_jrect(config: &VerifyConfig) -> Result<CheckResult> {
    let tol = config.tol_rect();
    let mut rng = rng_for(config.seed, "T4-jrect");
    let mut worst = 0.0f64;
    let mut detail = Vec::new();

    // j = 0: spherical curve about its center, shifted to a random vertex
    let (_, base) = pick_twisted_spherical(&mut rng, 4, 2, 0.05, 6.0, 0.8, 1501, 4)?;
    let p = EuclVec::from_vec_unchecked((0..4).map(|_| rng.random_range(-1.0..1.0)).collect());
    let shifted = base.translated(&p)?;
    let r0 = check_j_rectifying(&shifted, &p, 0)?;
    worst = worst.max(r0.aj_residual).max(r0.normal_tail_residual);
    detail.push(format!("j=0 residual {:.2e}", r0.aj_residual));
    if !r0.verdict {
        return result(false, worst, tol, "j = 0 positive failed to fire");
    }

    // j = 1: constructed rectifying curve in E^4, clear of the τ zero
    let inst = rectifying_instance(&mut rng, 4, true)?;
    let curve = sample_unit_speed(&inst.spec, inst.window, 1201, 4)?;
    let r1 = check_j_rectifying(&curve, &inst.vertex, 1)?;
    worst = worst.max(r1.aj_residual).max(r1.normal_tail_residual);
    detail.push(format!("j=1 residual {:.2e}", r1.aj_residual));
    if !r1.verdict {
        return result(false, worst, tol, "j = 1 positive failed to fire");
    }

    // j = m+1: twisted E^4 curve embedded in a hyperplane of E^5; jets to
    // order 5 so the completed E^5 frame can be built
    let (_, inner) = pick_twisted_spherical(&mut rng, 4, 2, 0.05, 6.0, 0.8, 1201, 5)?;
    let q = random_rotation(&mut rng, 5);
    let rows: Vec<EuclVec> = q
        .iter()
        .map(|r| EuclVec::from_vec_unchecked(r.as_slice()[..4].to_vec()))
        .collect();
    let normal = EuclVec::from_vec_unchecked(q.iter().map(|r| r[4]).collect());
    let offset = EuclVec::from_vec_unchecked((0..5).map(|_| rng.random_range(-1.0..1.0)).collect());
    let embedded = embed_sampled(&inner, &rows, &offset);
    // any point of the carrying hyperplane works as the vertex: shift the
    // first curve point along an in-plane image direction
    let in_plane = EuclVec::from_vec_unchecked(rows.iter().map(|r| r[0]).collect());
    let vertex = embedded.point(0).add_scaled(&in_plane, 0.3);
    let _ = &normal;
    let r4 = check_j_rectifying(&embedded, &vertex, 4)?;
    worst = worst.max(r4.aj_residual).max(r4.normal_tail_residual);
    detail.push(format!("j=m+1 residual {:.2e}", r4.aj_residual));
    if !r4.verdict {
        return result(false, worst, tol, "j = m+1 positive failed to fire");
    }

    result(worst < tol, worst, tol, detail.join(", "))
}

/// No twisted curve fires adjacent detectors j and j+1 simultaneously.
fn check_l2_exclusion(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "L2-exclusion");
    let mut double_fires = 0usize;
    let mut scanned = 0usize;

    let mut curves: Vec<(SampledCurve, EuclVec)> = Vec::new();
    // spherical curves about their center (0-rectifying)
    for n in [3usize, 4] {
        let (_, curve) = pick_twisted_spherical(&mut rng, n, 2, 0.05, 6.0, 0.8, 1001, n)?;
        curves.push((curve, EuclVec::zeros(n)));
    }
    // constructed rectifying curves (1-rectifying); kept on the positive
    // side of s + b = 0 where the E³ torsion τ = κ (s + b)/a stays nonzero
    for n in [3usize, 4, 5] {
        let inst = rectifying_instance(&mut rng, n, true)?;
        let curve = sample_unit_speed(&inst.spec, inst.window, 1001, n)?;
        let apparatus = frenet_apparatus(&curve)?;
        if !apparatus.twisted {
            continue;
        }
        curves.push((curve, inst.vertex));
    }
    // generic twisted curves with random vertices (all detectors negative)
    let (_, generic) = pick_twisted_spherical(&mut rng, 4, 3, 0.05, 8.0, 0.6, 1001, 4)?;
    let p = EuclVec::from_vec_unchecked((0..4).map(|_| rng.random_range(-1.0..1.0)).collect());
    curves.push((generic, p));

    for (curve, vertex) in &curves {
        let n = curve.dim();
        let mut verdicts = Vec::with_capacity(n);
        for j in 0..n {
            verdicts.push(check_j_rectifying(curve, vertex, j)?.verdict);
        }
        for pair in verdicts.windows(2) {
            scanned += 1;
            if pair[0] && pair[1] {
                double_fires += 1;
            }
        }
    }

    result(
        double_fires == 0,
        double_fires as f64,
        1.0,
        format!(
            "{} adjacent detector pairs over {} curves, {} double fires",
            scanned,
            curves.len(),
            double_fires
        ),
    )
}

/// Circular-cone geodesics are slant helices; non-circular ones are not; the
/// slant verdict matches the circularity verdict on every tested E³ cone.
fn check_t3_slant(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "T3-slant");
    let phi = std::f64::consts::FRAC_PI_4;
    let level_target = phi.sin();

    let circular = make_cone(
        &EuclVec::zeros(3),
        CurveSpec::builtin(crate::curve::AnalyticCurve::SmallCircleSphere { phi, dim: 3 }),
    )?;
    let spec = cone_geodesic(&circular, 1.0, 0.0, (-0.7, 0.8))?;
    let curve = sample_unit_speed(&spec, (-0.7, 0.8), 1001, 2)?;
    let fit = slant_helix_check(&curve)?;
    let axis = EuclVec::basis(3, 2);
    let axis_err = fit
        .direction
        .distance(&axis)
        .min(fit.direction.distance(&(-&axis)));
    let level_err = (fit.level.abs() - level_target).abs();
    if fit.residual >= TOL_SLANT || axis_err >= 1e-6 || level_err >= 1e-6 {
        return result(
            false,
            fit.residual.max(axis_err).max(level_err),
            TOL_SLANT,
            "circular-cone geodesic failed the slant test",
        );
    }
    let mut agreements = 0usize;
    let mut total = 0usize;
    let mut check_agreement = |cone: &Cone, slant_residual: f64| -> Result<()> {
        let circ = circularity_check(cone)?;
        total += 1;
        if (slant_residual < TOL_SLANT) == (circ.residual < TOL_CIRCULAR) {
            agreements += 1;
        }
        Ok(())
    };
    check_agreement(&circular, fit.residual)?;

    let mut min_negative = f64::INFINITY;
    let mut negatives = 0;
    let mut attempts = 0;
    while negatives < 10 && attempts < 96 {
        attempts += 1;
        let profile = pick_profile(&mut rng, 3, 2, 2.6)?;
        let cone = make_cone(&EuclVec::zeros(3), profile)?;
        let circ = circularity_check(&cone)?;
        if circ.residual < 1e-2 {
            continue; // too close to circular for a clean negative
        }
        let (plo, phi_hi) = cone.profile().default_domain();
        let t0 = 0.5 * (plo + phi_hi);
        let half = 1.2f64.min((phi_hi - plo) / 2.0 - 0.05);
        // the geodesic only sees the profile over this window; require the
        // cone to be non-circular along it (constant-angle residual of the
        // surface normal with margin), or the negative is too weak to show
        let analytic = cone.profile().analytic().expect("builtin profile");
        let mut xi = Vec::with_capacity(129);
        for i in 0..=128 {
            let t = t0 - half + 2.0 * half * i as f64 / 128.0;
            let jets = analytic.eval_jets(t, 1);
            xi.push(jets[0].cross(&jets[1]));
        }
        if fit_constant_direction(&xi)?.residual < 2e-2 {
            continue;
        }
        let gspec = cone_geodesic(&cone, 1.0, t0, (t0 - half, t0 + half))?;
        let gcurve = sample_unit_speed(&gspec, (t0 - half, t0 + half), 801, 2)?;
        let negative_fit = slant_helix_check(&gcurve)?;
        min_negative = min_negative.min(negative_fit.residual);
        check_agreement(&cone, negative_fit.residual)?;
        negatives += 1;
    }

    let passed = min_negative > 1e-2 && agreements == total;
    result(
        passed,
        fit.residual,
        TOL_SLANT,
        format!(
            "axis error {axis_err:.2e}, |level − sin φ| = {level_err:.2e}; 10 negatives ≥ {min_negative:.2e}; slant ⇔ circular on {agreements}/{total} cones"
        ),
    )
}

/// Constant-angle cones are exactly the circular ones (E³).
fn check_p1_circular(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "P1-circular");
    let mut worst_positive = 0.0f64;
    let mut min_negative = f64::INFINITY;
    let mut agreements = 0;
    let mut total = 0;

    let mut run = |cone: &Cone| -> Result<()> {
        // constant-angle side: the surface normal along the profile,
        // ξ = β × β' in E³
        let analytic = cone.profile().analytic().expect("builtin profile");
        let (lo, hi) = cone.profile().default_domain();
        let mut normals = Vec::with_capacity(257);
        for i in 0..=256 {
            let t = lo + (hi - lo) * i as f64 / 256.0;
            let jets = analytic.eval_jets(t, 1);
            normals.push(jets[0].cross(&jets[1]));
        }
        let angle_fit = fit_constant_direction(&normals)?;
        let circ_fit = circularity_check(cone)?;
        total += 1;
        let angle_ok = angle_fit.residual < TOL_CIRCULAR;
        let circ_ok = circ_fit.residual < TOL_CIRCULAR;
        if angle_ok == circ_ok {
            agreements += 1;
        }
        if circ_ok {
            worst_positive = worst_positive.max(angle_fit.residual).max(circ_fit.residual);
        } else {
            min_negative = min_negative.min(angle_fit.residual.min(circ_fit.residual));
        }
        Ok(())
    };

    for phi in [0.5, std::f64::consts::FRAC_PI_4, 1.1] {
        run(&make_cone(
            &EuclVec::zeros(3),
            CurveSpec::builtin(crate::curve::AnalyticCurve::SmallCircleSphere { phi, dim: 3 }),
        )?)?;
    }
    for _ in 0..6 {
        let profile = pick_profile(&mut rng, 3, 2, 1.5)?;
        run(&make_cone(&EuclVec::zeros(3), profile)?)?;
    }

    let passed = worst_positive < TOL_CIRCULAR && min_negative > 1e-2 && agreements == total;
    result(
        passed,
        worst_positive,
        TOL_CIRCULAR,
        format!(
            "{total} cones; constant-angle ⇔ circular on {agreements}; negatives ≥ {min_negative:.2e}"
        ),
    )
}

/// A geodesic of a circular hypercone in E^4 is a slant helix.
fn check_c2_hyperdim(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "C2-hyperdim");
    let phi = 0.65f64;
    let rows = random_rotation(&mut rng, 4);
    // the cone axis e_4 maps to column 4 of the rotation
    let axis = EuclVec::from_vec_unchecked(rows.iter().map(|r| r[3]).collect());
    let base = CurveSpec::builtin(crate::curve::AnalyticCurve::SmallCircleSphere { phi, dim: 4 });
    let profile = base.transformed(Some(rows), 1.0, &EuclVec::zeros(4))?;
    let vertex = EuclVec::from_vec_unchecked((0..4).map(|_| rng.random_range(-1.0..1.0)).collect());
    let cone = make_cone(&vertex, profile)?;
    let spec = cone_geodesic(&cone, 1.3, 0.1, (-0.6, 0.8))?;
    let curve = sample_unit_speed(&spec, (-0.6, 0.8), 1001, 2)?;
    let fit = slant_helix_check(&curve)?;

    // the hypercone geodesic spans a 3-subspace, so the fitted direction is
    // one member of a degenerate family; verify the cone axis directly
    let angles: Vec<f64> = (0..curve.len())
        .map(|i| {
            curve
                .jet(i, 2)
                .clone()
                .normalized()
                .map(|n1| n1.dot(&axis))
                .unwrap_or(f64::NAN)
        })
        .collect();
    let mean = angles.iter().sum::<f64>() / angles.len() as f64;
    let axis_dev = angles
        .iter()
        .map(|a| (a - mean).abs())
        .fold(0.0, f64::max);
    let level_err = (mean.abs() - phi.sin()).abs();

    let passed = fit.residual < TOL_SLANT && axis_dev < 1e-6 && level_err < 1e-6;
    result(
        passed,
        fit.residual.max(axis_dev),
        TOL_SLANT,
        format!("rotated circular hypercone; axis-angle deviation {axis_dev:.2e}, |level − sin φ| = {level_err:.2e}"),
    )
}

/// τ/((s+b)κ) is constant with a_hat = a on constructed E³ curves; the 4d
/// characteristic holds on constructed E^4 curves; helices fail both.
fn check_3d_eq(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "3d-eq");
    let mut worst_a = 0.0f64;
    let mut worst_res = 0.0f64;
    for _ in 0..3 {
        let inst = rectifying_instance(&mut rng, 3, true)?;
        let curve = sample_unit_speed(&inst.spec, inst.window, 1501, 3)?;
        let report = rectifying_equation_residual_3d(&curve, &inst.vertex)?;
        // a_hat is signed by the curve's handedness (the torsion convention
        // flips for mirror-image profiles); the construction pins only |a|
        worst_a = worst_a.max((report.a_hat.abs() - inst.a).abs());
        worst_res = worst_res.max(report.residual);
    }

    // negative: the helix admits no vertex making the ratio constant
    let helix = CurveSpec::builtin(crate::curve::AnalyticCurve::Helix { a: 1.0, b: 1.0 });
    let c = sample_jets(&helix, (0.0, std::f64::consts::TAU), 1201, 3)?;
    let curve = crate::curve::reparameterize_arclength(&c)?;
    let fit = find_vertex(&curve)?;
    let negative = rectifying_equation_residual_3d(&curve, &fit.vertex)?;

    let passed = worst_a < 1e-5 && worst_res < 1e-6 && negative.residual > 1e-2;
    result(
        passed,
        worst_a,
        1e-5,
        format!(
            "3 constructed curves: |a_hat − a| ≤ {worst_a:.2e}, constancy ≤ {worst_res:.2e}; helix residual {:.2e} (> 1e-2)",
            negative.residual
        ),
    )
}

fn check_4d_eq(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "4d-eq");
    let mut worst = 0.0f64;
    let mut built = 0;
    while built < 2 {
        let inst = rectifying_instance(&mut rng, 4, true)?;
        let curve = sample_unit_speed(&inst.spec, inst.window, 2001, 4)?;
        let apparatus = frenet_apparatus(&curve)?;
        if !apparatus.twisted {
            continue;
        }
        let min_tau = apparatus.curvatures[2]
            .iter()
            .map(|t| t.abs())
            .fold(f64::INFINITY, f64::min);
        if min_tau < 0.02 {
            continue; // torsion too close to zero for the 1/τ terms
        }
        let (_, max) = rectifying_equation_residual_4d(&curve, &inst.vertex)?;
        worst = worst.max(max);
        built += 1;
    }

    // negative: constant curvatures (a generalized helix) violate the
    // equation by h τ = (s + b) κ_0 τ / κ_1
    let n = 2001;
    let s: Vec<f64> = (0..n).map(|i| i as f64 * 8.0 / (n - 1) as f64).collect();
    let profile = CurvatureProfile::new(
        4,
        s,
        vec![vec![1.0; n], vec![0.7; n], vec![0.5; n]],
        ProfileSide::Rectifying,
        0.0,
    )?;
    let frame: Vec<EuclVec> = (0..4).map(|i| EuclVec::basis(4, i)).collect();
    let helix4 = curve_from_curvatures(&profile, &frame, &EuclVec::zeros(4))?;
    let fit = find_vertex(&helix4)?;
    let (_, negative) = rectifying_equation_residual_4d(&helix4, &fit.vertex)?;

    let passed = worst < 1e-4 && negative > 1e-2;
    result(
        passed,
        worst,
        1e-4,
        format!("2 constructed E^4 curves ≤ {worst:.2e}; constant-curvature negative {negative:.2e} (> 1e-2)"),
    )
}

/// Transport round-trips exactly; synthesized curves from transported
/// profiles pass the opposite-side detector; the coordinate identities hold.
fn check_t5_map(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "T5-map");
    let mut details = Vec::new();

    // (i) algebraic round trip at rounding level
    let n = 256;
    let s: Vec<f64> = (0..n).map(|i| 0.3 + i as f64 * 0.02).collect();
    let k0: Vec<f64> = s.iter().map(|x| 0.8 + 0.3 * x.sin()).collect();
    let t: Vec<f64> = s.iter().map(|x| 0.5 + 0.2 * (0.7 * x).cos()).collect();
    let spherical =
        CurvatureProfile::new(3, s, vec![k0.clone(), t.clone()], ProfileSide::Spherical, 0.0)?;
    let rect = spherical_to_rectifying_default(&spherical)?;
    let back = rectifying_to_spherical(&rect)?;
    let mut round_trip = 0.0f64;
    for (a, b) in back.functions[0].iter().zip(k0.iter()) {
        round_trip = round_trip.max((a - b).abs() / b.abs());
    }
    for (a, b) in back.functions[1].iter().zip(t.iter()) {
        if a != b {
            round_trip = round_trip.max(1.0);
        }
    }
    details.push(format!("round trip ≤ {round_trip:.2e} rel"));
    if round_trip > 4.0 * f64::EPSILON {
        return result(false, round_trip, 4.0 * f64::EPSILON, details.join("; "));
    }

    // (ii) E^4 rectifying -> E³ spherical: synthesize and residual-test
    let mut worst_sph = f64::INFINITY;
    for _ in 0..24 {
        let inst = rectifying_instance(&mut rng, 4, true)?;
        let curve = sample_unit_speed(&inst.spec, inst.window, 2001, 4)?;
        let apparatus = frenet_apparatus(&curve)?;
        if !apparatus.twisted {
            continue;
        }
        let min_tau = apparatus.curvatures[2]
            .iter()
            .map(|x| x.abs())
            .fold(f64::INFINITY, f64::min);
        if min_tau < 0.05 {
            continue;
        }
        let b = check_rectifying(&curve, &inst.vertex)?.b;
        let profile = measure_profile(&curve, ProfileSide::Rectifying, b)?;
        let transported = rectifying_to_spherical(&profile)?;
        let frame: Vec<EuclVec> = (0..3).map(|i| EuclVec::basis(3, i)).collect();
        let synthesized = curve_from_curvatures(&transported, &frame, &EuclVec::zeros(3))?;
        let (_, res) = spherical_equation_residual_3d(&synthesized)?;
        worst_sph = res;

        // (iv) coordinate identities (A_0, A_1, A_2) = (s+b, 0, (s+b)κ_0/κ_1)
        let field = apparatus.frame_field()?;
        let coords = coordinate_functions(&curve, field, &inst.vertex, FrameTag::Frenet)?;
        let mut coord_err = 0.0f64;
        for i in 0..curve.len() {
            let sb = curve.s()[i] + b;
            coord_err = coord_err.max((coords.a[i][0] - sb).abs());
            coord_err = coord_err.max(coords.a[i][1].abs());
            let expect =
                sb * apparatus.curvatures[0][i] / apparatus.curvatures[1][i];
            coord_err = coord_err.max((coords.a[i][2] - expect).abs());
        }
        details.push(format!(
            "E^4→E³ spherical residual {res:.2e}; (A_0,A_1,A_2) identity ≤ {coord_err:.2e}"
        ));
        if coord_err > 1e-5 {
            return result(false, coord_err, 1e-5, details.join("; "));
        }
        break;
    }
    if worst_sph > 1e-4 {
        return result(false, worst_sph, 1e-4, details.join("; "));
    }

    // (iii) E³ spherical -> E^4 rectifying: synthesize and detector-test,
    // plus the spherical-side identity (C_0, C_1) = (0, -1/k_0)
    let (_, sphere_curve) = pick_twisted_spherical(&mut rng, 3, 2, 0.1, 6.0, 0.8, 2001, 3)?;
    let apparatus = frenet_apparatus(&sphere_curve)?;
    let field = apparatus.frame_field()?;
    let coords = coordinate_functions(&sphere_curve, field, &EuclVec::zeros(3), FrameTag::Frenet)?;
    let mut c_err = 0.0f64;
    for i in 0..sphere_curve.len() {
        c_err = c_err.max(coords.a[i][0].abs());
        c_err = c_err.max((coords.a[i][1] + 1.0 / apparatus.curvatures[0][i]).abs());
    }
    details.push(format!("(C_0, C_1) identity ≤ {c_err:.2e}"));
    if c_err > 1e-5 {
        return result(false, c_err, 1e-5, details.join("; "));
    }
    let sph_profile = measure_profile(&sphere_curve, ProfileSide::Spherical, 0.0)?;
    let transported = spherical_to_rectifying_default(&sph_profile)?;
    let frame: Vec<EuclVec> = (0..4).map(|i| EuclVec::basis(4, i)).collect();
    let synthesized = curve_from_curvatures(&transported, &frame, &EuclVec::zeros(4))?;
    let vertex = find_vertex(&synthesized)?;
    let report = check_rectifying_with_tol(&synthesized, &vertex.vertex, 1e-4)?;
    details.push(format!(
        "E³→E^4 rectifying residuals ({:.2e}, {:.2e}, {:.2e})",
        report.cond1_residual, report.cond2_residual, report.cond4_residual
    ));
    let worst = report
        .cond1_residual
        .max(report.cond2_residual)
        .max(report.cond4_residual)
        .max(worst_sph);
    result(report.verdict, worst, 1e-4, details.join("; "))
}

/// Spheres classify as spheres, planes as hyperplanes, the helix as neither;
/// the sphere normal is rotation minimizing.
fn check_t6_rm(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "T6-rm");
    let mut worst_param = 0.0f64;

    // 20 spherical curves with random centers and radii
    for n in [3usize, 4] {
        let mut done = 0;
        while done < 10 {
            let seed = rng.next_u64() >> 32;
            let Ok(raw) = random_spherical_curve(n, seed, 2) else {
                continue;
            };
            let radius = rng.random_range(0.5..2.5);
            let center = EuclVec::from_vec_unchecked(
                (0..n).map(|_| rng.random_range(-2.0..2.0)).collect(),
            );
            let spec = raw.transformed(None, radius, &center)?;
            let curve = sample_jets(&spec, spec.default_domain(), 601, 1)?;
            match classify_rm_normal(&curve)?.verdict {
                Verdict::Sphere {
                    center: c,
                    radius: r,
                } => {
                    worst_param = worst_param
                        .max(c.distance(&center))
                        .max((r - radius).abs());
                }
                other => {
                    return result(
                        false,
                        0.0,
                        TOL_CLASSIFY,
                        format!("sphere instance classified as {other:?}"),
                    )
                }
            }
            done += 1;
        }
    }

    // 20 plane curves embedded with known normals
    for n in [3usize, 4] {
        let mut done = 0;
        while done < 10 {
            let seed = rng.next_u64() >> 32;
            let Ok(inner) = random_fourier_curve(n - 1, seed, 2) else {
                continue;
            };
            let q = random_rotation(&mut rng, n);
            let rows: Vec<EuclVec> = q
                .iter()
                .map(|r| EuclVec::from_vec_unchecked(r.as_slice()[..n - 1].to_vec()))
                .collect();
            let normal = EuclVec::from_vec_unchecked(q.iter().map(|r| r[n - 1]).collect());
            let offset = EuclVec::from_vec_unchecked(
                (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            );
            let spec = inner.transformed(Some(rows), 1.0, &offset)?;
            let curve = sample_jets(&spec, spec.default_domain(), 601, 1)?;
            match classify_rm_normal(&curve)?.verdict {
                Verdict::Hyperplane { normal: fit, .. } => {
                    worst_param = worst_param
                        .max(fit.distance(&normal).min(fit.distance(&(-&normal))));
                }
                other => {
                    return result(
                        false,
                        0.0,
                        TOL_CLASSIFY,
                        format!("plane instance classified as {other:?}"),
                    )
                }
            }
            done += 1;
        }
    }

    // the helix is neither
    let helix = CurveSpec::builtin(crate::curve::AnalyticCurve::Helix { a: 1.0, b: 1.0 });
    let c = sample_jets(&helix, (0.0, std::f64::consts::TAU), 501, 1)?;
    let helix_class = classify_rm_normal(&c)?;
    if !matches!(helix_class.verdict, Verdict::Neither) {
        return result(false, helix_class.residual, TOL_CLASSIFY, "helix not Neither");
    }

    // the sphere normal ξ = (α − p)/R is rotation minimizing: its derivative
    // has no normal component, and the transported field tracks it
    let (_, sphere_curve) = pick_twisted_spherical(&mut rng, 3, 2, 0.05, 6.0, 0.8, 1501, 3)?;
    let h = sphere_curve.step();
    let xi: Vec<EuclVec> = sphere_curve
        .points()
        .iter()
        .map(|p| p.clone().normalized().unwrap())
        .collect();
    let dxi = fd::derivative_uniform_vec(&xi, h, 1);
    let mut rm_defect = 0.0f64;
    for i in 4..sphere_curve.len() - 4 {
        let t = sphere_curve.jet(i, 1);
        let mut normal_part = dxi[i].clone();
        normal_part.axpy(t, -dxi[i].dot(t));
        rm_defect = rm_defect.max(normal_part.norm());
    }
    let frame = rm_frame(&sphere_curve, &[xi[0].clone()])?;
    let mut track = 0.0f64;
    for i in 0..sphere_curve.len() {
        track = track.max(frame.field.vectors[i][1].distance(&xi[i]));
    }

    let passed = worst_param < 1e-6 && rm_defect < TOL_RM && track < 1e-6;
    result(
        passed,
        worst_param.max(rm_defect),
        1e-6,
        format!(
            "40 classifications, parameter error ≤ {worst_param:.2e}; ξ RM defect {rm_defect:.2e} (tol 1e-8); transport tracks ξ to {track:.2e}"
        ),
    )
}

/// Frame hygiene: orthonormality, the RM condition, and the synthesis round
/// trip across a representative curve set.
fn check_frame_hygiene(config: &VerifyConfig) -> Result<CheckResult> {
    let mut rng = rng_for(config.seed, "frame-hygiene");
    let mut worst_ortho = 0.0f64;
    let mut worst_frenet = 0.0f64;

    let mut curves: Vec<SampledCurve> = Vec::new();
    let helix = CurveSpec::builtin(crate::curve::AnalyticCurve::Helix { a: 1.0, b: 1.0 });
    let c = sample_jets(&helix, (0.0, std::f64::consts::TAU), 1201, 3)?;
    curves.push(crate::curve::reparameterize_arclength(&c)?);
    for n in [3usize, 4] {
        let inst = twisted_rectifying_for_hygiene(&mut rng, n)?;
        curves.push(inst);
    }
    let (_, sphere4) = pick_twisted_spherical(&mut rng, 4, 2, 0.05, 6.0, 0.8, 1001, 4)?;
    curves.push(sphere4);

    for curve in &curves {
        let apparatus = frenet_apparatus(curve)?;
        let field = apparatus.frame_field()?;
        worst_ortho = worst_ortho.max(field.max_orthonormality_residual());
        worst_frenet = worst_frenet.max(frenet_equation_residual(&apparatus)?);
    }

    // RM condition on the helix with a full normal set
    let helix_curve = &curves[0];
    let t0 = helix_curve.jet(0, 1);
    let n0 = helix_curve.jet(0, 2).clone().normalized()?;
    let b0 = t0.cross(&n0);
    let frame = rm_frame(helix_curve, &[n0, b0])?;
    let rm = rm_residuals(helix_curve, &frame);

    // synthesis round trip in E³ and E^4
    let mut worst_round = 0.0f64;
    for dim in [3usize, 4] {
        let n = 4001;
        let s: Vec<f64> = (0..n).map(|i| i as f64 * 10.0 / (n - 1) as f64).collect();
        let mut functions = vec![
            s.iter().map(|x| 1.0 + 0.3 * (0.7 * x).sin()).collect::<Vec<_>>(),
            s.iter().map(|x| 0.5 + 0.2 * (0.9 * x).cos()).collect::<Vec<_>>(),
        ];
        if dim == 4 {
            functions.push(s.iter().map(|x| 0.4 + 0.15 * (1.1 * x).sin()).collect());
        }
        let profile =
            CurvatureProfile::new(dim, s, functions.clone(), ProfileSide::Rectifying, 0.0)?;
        let frame: Vec<EuclVec> = (0..dim).map(|i| EuclVec::basis(dim, i)).collect();
        let curve = curve_from_curvatures(&profile, &frame, &EuclVec::zeros(dim))?;
        let measured = frenet_apparatus(&curve)?;
        for (row, expect) in measured.curvatures.iter().zip(functions.iter()) {
            for (a, b) in row.iter().zip(expect.iter()) {
                worst_round = worst_round.max((a - b).abs());
            }
        }
    }

    let passed = worst_ortho < TOL_FRAME_ORTHONORMAL
        && rm.normal_part < TOL_RM
        && worst_round < 1e-6;
    result(
        passed,
        worst_ortho.max(rm.normal_part).max(worst_round),
        TOL_FRAME_ORTHONORMAL,
        format!(
            "orthonormality ≤ {worst_ortho:.2e}; Frenet-equation residual ≤ {worst_frenet:.2e}; RM defect {:.2e}; synthesis round trip ≤ {worst_round:.2e}",
            rm.normal_part
        ),
    )
}

/// A constructed rectifying curve that stays twisted across its window.
/// Windows sit on the positive side of s + b = 0: in E³ the torsion of a
/// rectifying curve is κ (s + b)/a and vanishes exactly at the closest
/// approach to the vertex, so symmetric windows always lose rank there.
fn twisted_rectifying_for_hygiene(rng: &mut ChaCha8Rng, n: usize) -> Result<SampledCurve> {
    for _ in 0..16 {
        let inst = rectifying_instance(rng, n, true)?;
        let curve = sample_unit_speed(&inst.spec, inst.window, 1001, n)?;
        if frenet_apparatus(&curve)?.twisted {
            return Ok(curve);
        }
    }
    Err(Error::NonRegularSeed)
}
