//! Rectifying and j-rectifying curve detection, the secant-cone constructor,
//! and vertex recovery.
//!
//! A unit-speed curve is rectifying with vertex p when ⟨α − p, α''⟩ ≡ 0.
//! Three numerically independent symptoms are checked side by side rather
//! than assumed equivalent: the defining orthogonality (cond1), the quadratic
//! distance profile ρ² = s² + 2bs + c (cond2), and the constant-length normal
//! component (cond4). The j-rectifying generalization replaces α'' by the
//! j-th Frenet vector.

use serde::Serialize;

use crate::curve::{sample_jets, CurveSpec, JetSource, SampledCurve};
use crate::error::Error;
use crate::frames::{coordinate_functions, frenet_apparatus, FrameTag};
use crate::linalg::{solve_symmetric_min_norm, EuclVec};
use crate::tolerances::{TOL_RECT_ANALYTIC, TOL_RECT_FD};
use crate::Result;
use nalgebra::{DMatrix, DVector};

/// Max deviation from the mean, relative to the mean when it is comfortably
/// nonzero. Shared constancy judgement for all detectors.
pub(crate) fn constancy_residual(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let dev = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0, f64::max);
    if mean.abs() > 1e-8 {
        dev / mean.abs()
    } else {
        dev
    }
}

pub(crate) fn default_tol(source: JetSource) -> f64 {
    match source {
        JetSource::Analytic => TOL_RECT_ANALYTIC,
        JetSource::FiniteDifference => TOL_RECT_FD,
    }
}

/// Outcome of the rectifying test against a fixed vertex.
#[derive(Debug, Clone, Serialize)]
pub struct RectifyingReport {
    pub vertex: EuclVec,
    /// Fitted constant in ⟨α − p, T⟩ = s + b.
    pub b: f64,
    /// Fitted constant in ρ² = s² + 2bs + c.
    pub c: f64,
    /// a² = c − b² (0 when the data gives c < b²).
    pub a: f64,
    /// max |⟨α − p, α''⟩| / max ‖α''‖.
    pub cond1_residual: f64,
    /// max |ρ² − (s² + 2bs + c)|.
    pub cond2_residual: f64,
    /// Deviation of ‖α^N‖ from constancy.
    pub cond4_residual: f64,
    pub verdict: bool,
    /// α'' vanishes identically: a straight line, rectifying vacuously.
    pub degenerate_line: bool,
    pub tolerance: f64,
}

/// Test whether the curve is rectifying with vertex `p`, using the tolerance
/// implied by the jet source.
pub fn check_rectifying(curve: &SampledCurve, p: &EuclVec) -> Result<RectifyingReport> {
    check_rectifying_with_tol(curve, p, default_tol(curve.jet_source()))
}

pub fn check_rectifying_with_tol(
    curve: &SampledCurve,
    p: &EuclVec,
    tol: f64,
) -> Result<RectifyingReport> {
    curve.require_unit_speed()?;
    curve.require_jets(2)?;
    if p.dim() != curve.dim() {
        return Err(Error::DimensionMismatch {
            expected: curve.dim(),
            got: p.dim(),
        });
    }
    let len = curve.len();
    let s = curve.s();

    let mut tangential = Vec::with_capacity(len); // ⟨α − p, T⟩
    let mut rho_sq = Vec::with_capacity(len);
    let mut cond1_raw = 0.0f64;
    let mut max_acc = 0.0f64;
    let mut normal_len = Vec::with_capacity(len);
    for i in 0..len {
        let delta = curve.point(i) - p;
        let t = curve.jet(i, 1);
        let acc = curve.jet(i, 2);
        let proj = delta.dot(t);
        tangential.push(proj);
        rho_sq.push(delta.norm_squared());
        cond1_raw = cond1_raw.max(delta.dot(acc).abs());
        max_acc = max_acc.max(acc.norm());
        let normal = delta.add_scaled(t, -proj);
        normal_len.push(normal.norm());
    }

    let degenerate_line = max_acc <= 1e-12;
    let cond1_residual = if degenerate_line {
        0.0
    } else {
        cond1_raw / max_acc
    };

    let b = tangential
        .iter()
        .zip(s.iter())
        .map(|(t, si)| t - si)
        .sum::<f64>()
        / len as f64;
    let c = rho_sq
        .iter()
        .zip(s.iter())
        .map(|(r, si)| r - si * si - 2.0 * b * si)
        .sum::<f64>()
        / len as f64;
    let cond2_residual = rho_sq
        .iter()
        .zip(s.iter())
        .map(|(r, si)| (r - (si * si + 2.0 * b * si + c)).abs())
        .fold(0.0, f64::max);
    let cond4_residual = constancy_residual(&normal_len);

    let a = (c - b * b).max(0.0).sqrt();
    let verdict = cond1_residual < tol && cond2_residual < tol && cond4_residual < tol;

    Ok(RectifyingReport {
        vertex: p.clone(),
        b,
        c,
        a,
        cond1_residual,
        cond2_residual,
        cond4_residual,
        verdict,
        degenerate_line,
        tolerance: tol,
    })
}

/// Build the rectifying curve α(t) = p + a sec(t − t0) β(t) over a unit-speed
/// spherical profile β (centered at the origin; the vertex supplies the
/// translation).
pub fn construct_rectifying(
    beta: &CurveSpec,
    vertex: &EuclVec,
    a: f64,
    t0: f64,
) -> Result<CurveSpec> {
    let analytic = beta.analytic().ok_or_else(|| {
        Error::InvalidArgument(
            "construct_rectifying needs an analytic profile; ingest tables via \
             sample_jets first and fit a builtin family"
                .into(),
        )
    })?;
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::ParamOutOfRange {
            param: "a".into(),
            message: "must be positive and finite".into(),
        });
    }
    if vertex.dim() != beta.dimension() {
        return Err(Error::DimensionMismatch {
            expected: beta.dimension(),
            got: vertex.dim(),
        });
    }
    validate_spherical_profile(beta)?;
    Ok(CurveSpec::builtin(
        crate::curve::AnalyticCurve::SecScaled {
            profile: Box::new(analytic.clone()),
            vertex: vertex.clone(),
            a,
            t0,
        },
    ))
}

/// Profile admissibility: ‖β‖ = 1 and ‖β'‖ = 1 within 1e-8 over the profile's
/// own domain.
pub(crate) fn validate_spherical_profile(beta: &CurveSpec) -> Result<()> {
    let analytic = beta
        .analytic()
        .ok_or_else(|| Error::InvalidArgument("profile must be analytic".into()))?;
    let (lo, hi) = beta.default_domain();
    let samples = 512;
    let mut worst = 0.0f64;
    for i in 0..=samples {
        let t = lo + (hi - lo) * i as f64 / samples as f64;
        let jets = analytic.eval_jets(t, 1);
        worst = worst.max((jets[0].norm() - 1.0).abs());
        worst = worst.max((jets[1].norm() - 1.0).abs());
    }
    if worst > 1e-8 {
        return Err(Error::ProfileNotSpherical { deviation: worst });
    }
    Ok(())
}

/// Outcome of the j-rectifying test: A_j ≡ 0 and constant ‖α^{N_j}‖.
#[derive(Debug, Clone, Serialize)]
pub struct JRectifyingReport {
    pub j: usize,
    /// max |A_j|.
    pub aj_residual: f64,
    /// Deviation of ‖α^{N_j}‖ = sqrt(Σ_{i>j} A_i²) from constancy.
    pub normal_tail_residual: f64,
    pub verdict: bool,
    pub tolerance: f64,
}

/// Test ⟨α − p, N_j⟩ ≡ 0 against the Frenet frame. Needs a full frame: the
/// curve must be twisted, or a hyperplane curve whose frame completes with
/// the constant normal (the osculating j = m+1 case).
pub fn check_j_rectifying(curve: &SampledCurve, p: &EuclVec, j: usize) -> Result<JRectifyingReport> {
    check_j_rectifying_with_tol(curve, p, j, default_tol(curve.jet_source()))
}

pub fn check_j_rectifying_with_tol(
    curve: &SampledCurve,
    p: &EuclVec,
    j: usize,
    tol: f64,
) -> Result<JRectifyingReport> {
    let n = curve.dim();
    if j > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "j must lie in 0..={} for dimension {n}",
            n - 1
        )));
    }
    let apparatus = frenet_apparatus(curve)?;
    let field = apparatus.frame_field()?;
    let coords = coordinate_functions(curve, field, p, FrameTag::Frenet)?;

    let aj_residual = coords
        .a
        .iter()
        .map(|row| row[j].abs())
        .fold(0.0, f64::max);
    let tails: Vec<f64> = coords
        .a
        .iter()
        .map(|row| row[j + 1..].iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let normal_tail_residual = constancy_residual(&tails);
    let verdict = aj_residual < tol && normal_tail_residual < tol;

    Ok(JRectifyingReport {
        j,
        aj_residual,
        normal_tail_residual,
        verdict,
        tolerance: tol,
    })
}

/// Least-squares vertex recovery from ⟨α(s) − p, α''(s)⟩ = 0.
#[derive(Debug, Clone, Serialize)]
pub struct VertexFit {
    pub vertex: EuclVec,
    /// cond1 residual of the recovered vertex.
    pub residual: f64,
    /// The normal equations were rank-deficient; the minimum-norm
    /// representative of the solution set is returned.
    pub rank_deficient: bool,
    pub dropped_directions: usize,
}

pub fn find_vertex(curve: &SampledCurve) -> Result<VertexFit> {
    curve.require_jets(2)?;
    let n = curve.dim();
    let len = curve.len();
    let max_acc = (0..len)
        .map(|i| curve.jet(i, 2).norm())
        .fold(0.0, f64::max);
    if max_acc <= 1e-12 {
        return Err(Error::VertexUndetermined);
    }

    let mut mat = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    for i in 0..len {
        let acc = curve.jet(i, 2);
        let target = acc.dot(curve.point(i));
        for r in 0..n {
            rhs[r] += acc[r] * target;
            for c in 0..n {
                mat[(r, c)] += acc[r] * acc[c];
            }
        }
    }
    let (sol, dropped) = solve_symmetric_min_norm(&mat, &rhs, 1e-10);
    let vertex = EuclVec::from_vec_unchecked(sol.as_slice().to_vec());

    let mut worst = 0.0f64;
    for i in 0..len {
        let delta = curve.point(i) - &vertex;
        worst = worst.max(delta.dot(curve.jet(i, 2)).abs());
    }
    Ok(VertexFit {
        vertex,
        residual: worst / max_acc,
        rank_deficient: dropped > 0,
        dropped_directions: dropped,
    })
}

/// Convenience: sample + reparameterize a constructed rectifying curve over a
/// window inside the secant guard band.
pub fn sample_unit_speed(
    spec: &CurveSpec,
    domain: (f64, f64),
    count: usize,
    jet_order: usize,
) -> Result<SampledCurve> {
    let sampled = sample_jets(spec, domain, count, jet_order)?;
    crate::curve::reparameterize_arclength(&sampled)
}
