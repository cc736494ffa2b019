//! Cones over spherical profile curves: geodesics, the secant Euler-Lagrange
//! equation, flat development, circularity, and slant-helix analysis.
//!
//! A 2-cone is vertex + u · β(t) for a unit-speed profile β on the unit
//! sphere about the origin. Its non-ruling geodesics are exactly the secant
//! scalings u(t) = a sec(t − t0), which is also the rectifying-curve family;
//! `geodesic_check` verifies the defining normality ⟨α'', α − p⟩ = 0 directly
//! and recovers the radial profile u(t) to residual-test the variational
//! equation u u'' − 2 u'² − u² = 0 along the way.

use serde::Serialize;

use crate::curve::{AnalyticCurve, CurveSpec, SampledCurve};
use crate::error::Error;
use crate::linalg::{fit_constant_direction, smallest_eigenpair, DirectionFit, EuclVec};
use crate::numeric::fd;
use crate::rectify::validate_spherical_profile;
use crate::tolerances::{TOL_GEO_ANALYTIC, TOL_GEO_FD};
use crate::{curve::JetSource, Result};
use nalgebra::DMatrix;

/// A cone over a curve: vertex p plus a unit-speed profile on S^{n-1}(0, 1)
/// (points of the cone are p + u β(t)).
#[derive(Debug, Clone)]
pub struct Cone {
    vertex: EuclVec,
    profile: CurveSpec,
    planar: bool,
    profile_deviation: f64,
}

impl Cone {
    pub fn vertex(&self) -> &EuclVec {
        &self.vertex
    }

    pub fn profile(&self) -> &CurveSpec {
        &self.profile
    }

    /// The profile lies in a hyperplane through the center (a great sphere),
    /// so the cone degenerates to a hyperplane.
    pub fn planar(&self) -> bool {
        self.planar
    }

    pub fn profile_deviation(&self) -> f64 {
        self.profile_deviation
    }

    pub fn dim(&self) -> usize {
        self.vertex.dim()
    }

    /// The cone point p + u β(t).
    pub fn point(&self, u: f64, t: f64) -> Result<EuclVec> {
        let analytic = self
            .profile
            .analytic()
            .ok_or_else(|| Error::InvalidArgument("profile must be analytic".into()))?;
        let beta = analytic.eval_jets(t, 0);
        Ok(self.vertex.add_scaled(&beta[0], u))
    }
}

/// Validate and wrap a cone; detects great-sphere (planar) profiles.
pub fn make_cone(vertex: &EuclVec, profile: CurveSpec) -> Result<Cone> {
    if vertex.dim() != profile.dimension() {
        return Err(Error::DimensionMismatch {
            expected: profile.dimension(),
            got: vertex.dim(),
        });
    }
    validate_spherical_profile(&profile)?;
    let analytic = profile.analytic().expect("validated profile is analytic");
    let (lo, hi) = profile.default_domain();
    let n = profile.dimension();
    let samples = 512;
    let mut gram = DMatrix::<f64>::zeros(n, n);
    let mut points = Vec::with_capacity(samples + 1);
    let mut worst = 0.0f64;
    for i in 0..=samples {
        let t = lo + (hi - lo) * i as f64 / samples as f64;
        let jets = analytic.eval_jets(t, 1);
        worst = worst.max((jets[0].norm() - 1.0).abs());
        worst = worst.max((jets[1].norm() - 1.0).abs());
        for r in 0..n {
            for c in 0..n {
                gram[(r, c)] += jets[0][r] * jets[0][c];
            }
        }
        points.push(jets.into_iter().next().unwrap());
    }
    let (_, normal) = smallest_eigenpair(&gram);
    let planar_res = points
        .iter()
        .map(|p| {
            p.iter()
                .zip(normal.iter())
                .map(|(a, b)| a * b)
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    Ok(Cone {
        vertex: vertex.clone(),
        profile,
        planar: planar_res < 1e-8,
        profile_deviation: worst,
    })
}

/// The non-ruling geodesic p + a sec(t − t0) β(t) over the cone's profile,
/// restricted to `domain` (which must avoid the secant asymptotes).
pub fn cone_geodesic(cone: &Cone, a: f64, t0: f64, domain: (f64, f64)) -> Result<CurveSpec> {
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::ParamOutOfRange {
            param: "a".into(),
            message: "must be positive and finite".into(),
        });
    }
    let analytic = cone
        .profile
        .analytic()
        .ok_or_else(|| Error::InvalidArgument("profile must be analytic".into()))?;
    let spec = AnalyticCurve::SecScaled {
        profile: Box::new(analytic.clone()),
        vertex: cone.vertex.clone(),
        a,
        t0,
    };
    spec.check_domain(domain.0, domain.1)?;
    Ok(CurveSpec::builtin(spec).with_domain(domain.0, domain.1))
}

/// Residual of the geodesic Euler-Lagrange equation u u'' − 2 u'² − u² = 0
/// for radial samples u(t) on a uniform grid; derivatives by 4th-order
/// finite differences. Returns the residual series and its max.
pub fn euler_lagrange_residual(u: &[f64], h: f64) -> Result<(Vec<f64>, f64)> {
    if u.len() < 5 {
        return Err(Error::InsufficientSamples {
            needed: 5,
            got: u.len(),
        });
    }
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let du = fd::derivative_uniform(u, h, 1);
    let ddu = fd::derivative_uniform(u, h, 2);
    let r: Vec<f64> = (0..u.len())
        .map(|i| u[i] * ddu[i] - 2.0 * du[i] * du[i] - u[i] * u[i])
        .collect();
    let max = r.iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok((r, max))
}

/// Geodesic verdict for a unit-speed curve against a cone vertex.
#[derive(Debug, Clone, Serialize)]
pub struct GeodesicReport {
    /// max of |⟨α'', α − p⟩| / max‖α''‖ and |⟨α'', α'⟩|.
    pub normality_residual: f64,
    /// Euler-Lagrange residual of the recovered u(t); absent for rulings
    /// (the angular coordinate does not advance).
    pub euler_lagrange_residual: Option<f64>,
    pub is_ruling: bool,
    pub verdict: bool,
    pub tolerance: f64,
}

pub fn geodesic_check(curve: &SampledCurve, vertex: &EuclVec) -> Result<GeodesicReport> {
    let tol = match curve.jet_source() {
        JetSource::Analytic => TOL_GEO_ANALYTIC,
        JetSource::FiniteDifference => TOL_GEO_FD,
    };
    geodesic_check_with_tol(curve, vertex, tol)
}

pub fn geodesic_check_with_tol(
    curve: &SampledCurve,
    vertex: &EuclVec,
    tol: f64,
) -> Result<GeodesicReport> {
    curve.require_unit_speed()?;
    curve.require_jets(2)?;
    if vertex.dim() != curve.dim() {
        return Err(Error::DimensionMismatch {
            expected: curve.dim(),
            got: vertex.dim(),
        });
    }
    let len = curve.len();

    let mut max_acc = 0.0f64;
    let mut radial = 0.0f64;
    let mut tangential = 0.0f64;
    let mut ruling_angle = 0.0f64;
    let mut el_worst: f64 = 0.0;
    let mut el_defined = true;
    for i in 0..len {
        let delta = curve.point(i) - vertex;
        let t = curve.jet(i, 1);
        let acc = curve.jet(i, 2);
        max_acc = max_acc.max(acc.norm());
        radial = radial.max(acc.dot(&delta).abs());
        tangential = tangential.max(acc.dot(t).abs());

        let rho = delta.norm();
        if rho <= 1e-12 {
            el_defined = false;
            ruling_angle = ruling_angle.max(0.0);
            continue;
        }
        let hat = delta.scaled(1.0 / rho);
        let sin_angle = {
            let mut w = hat.clone();
            w.axpy(t, -hat.dot(t));
            w.norm()
        };
        ruling_angle = ruling_angle.max(sin_angle);

        // chain rule through the cone parameterization: u = ρ, dt = ‖β̂'‖ ds
        let rho_p = delta.dot(t) / rho;
        let rho_pp = (t.norm_squared() + delta.dot(acc) - rho_p * rho_p) / rho;
        let mut hat_p = t.scaled(1.0 / rho);
        hat_p.axpy(&delta, -rho_p / (rho * rho));
        let mut hat_pp = acc.scaled(1.0 / rho);
        hat_pp.axpy(t, -2.0 * rho_p / (rho * rho));
        hat_pp.axpy(&delta, -rho_pp / (rho * rho) + 2.0 * rho_p * rho_p / (rho * rho * rho));
        let theta_p = hat_p.norm();
        if theta_p <= 1e-10 {
            el_defined = false;
            continue;
        }
        let theta_pp = hat_p.dot(&hat_pp) / theta_p;
        let u_t = rho_p / theta_p;
        let u_tt = (rho_pp * theta_p - rho_p * theta_pp) / (theta_p * theta_p * theta_p);
        el_worst = el_worst.max((rho * u_tt - 2.0 * u_t * u_t - rho * rho).abs());
    }

    let normality_residual = if max_acc <= 1e-12 {
        tangential
    } else {
        (radial / max_acc).max(tangential)
    };
    let is_ruling = ruling_angle < 1e-8;
    let verdict = is_ruling || normality_residual < tol;
    Ok(GeodesicReport {
        normality_residual,
        euler_lagrange_residual: if el_defined && !is_ruling {
            Some(el_worst)
        } else {
            None
        },
        is_ruling,
        verdict,
        tolerance: tol,
    })
}

/// Isometric development of a curve on a 2-cone into the plane:
/// (u, θ) ↦ (u cos θ, u sin θ) with θ the arc length of the normalized
/// radial projection, anchored at the first sample. Geodesics map to
/// straight lines and lengths are preserved.
pub fn unroll_2cone(cone: &Cone, curve: &SampledCurve) -> Result<SampledCurve> {
    if curve.dim() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: curve.dim(),
        });
    }
    unroll_about_vertex(&cone.vertex, curve)
}

/// [`unroll_2cone`] for the 2-cone implied by the curve and a vertex alone
/// (the development only needs the radial projection).
pub fn unroll_about_vertex(vertex: &EuclVec, curve: &SampledCurve) -> Result<SampledCurve> {
    if curve.dim() != vertex.dim() {
        return Err(Error::DimensionMismatch {
            expected: vertex.dim(),
            got: curve.dim(),
        });
    }
    curve.require_jets(2)?;
    let len = curve.len();
    let h = curve.step();

    // radial and angular data per sample
    let mut u = Vec::with_capacity(len);
    let mut u_p = Vec::with_capacity(len);
    let mut u_pp = Vec::with_capacity(len);
    let mut theta_p = Vec::with_capacity(len);
    let mut theta_pp = Vec::with_capacity(len);
    for i in 0..len {
        let delta = curve.point(i) - vertex;
        let t = curve.jet(i, 1);
        let acc = curve.jet(i, 2);
        let rho = delta.norm();
        if rho <= 1e-12 {
            return Err(Error::InvalidArgument(
                "curve passes through the cone vertex".into(),
            ));
        }
        let rho_p = delta.dot(t) / rho;
        let rho_pp = (t.norm_squared() + delta.dot(acc) - rho_p * rho_p) / rho;
        let mut hat_p = t.scaled(1.0 / rho);
        hat_p.axpy(&delta, -rho_p / (rho * rho));
        let mut hat_pp = acc.scaled(1.0 / rho);
        hat_pp.axpy(t, -2.0 * rho_p / (rho * rho));
        hat_pp.axpy(&delta, -rho_pp / (rho * rho) + 2.0 * rho_p * rho_p / (rho * rho * rho));
        let tp = hat_p.norm();
        u.push(rho);
        u_p.push(rho_p);
        u_pp.push(rho_pp);
        theta_p.push(tp);
        theta_pp.push(if tp > 0.0 { hat_p.dot(&hat_pp) / tp } else { 0.0 });
    }

    let max_tp = theta_p.iter().fold(0.0f64, |a, &b| a.max(b));
    if let Some(i) = theta_p.iter().position(|&tp| tp <= 1e-10 * max_tp.max(1e-10)) {
        return Err(Error::DoublesBack { sample: i });
    }

    // cumulative angle by Hermite-corrected trapezoid (O(h^5) per step)
    let mut theta = vec![0.0; len];
    for i in 1..len {
        theta[i] = theta[i - 1]
            + h / 2.0 * (theta_p[i - 1] + theta_p[i])
            + h * h / 12.0 * (theta_pp[i - 1] - theta_pp[i]);
    }

    let mut points = Vec::with_capacity(len);
    let mut jets = Vec::with_capacity(len);
    for i in 0..len {
        let (st, ct) = theta[i].sin_cos();
        points.push(EuclVec::from_vec_unchecked(vec![u[i] * ct, u[i] * st]));
        let x1 = u_p[i] * ct - u[i] * theta_p[i] * st;
        let y1 = u_p[i] * st + u[i] * theta_p[i] * ct;
        let x2 = u_pp[i] * ct
            - 2.0 * u_p[i] * theta_p[i] * st
            - u[i] * theta_pp[i] * st
            - u[i] * theta_p[i] * theta_p[i] * ct;
        let y2 = u_pp[i] * st
            + 2.0 * u_p[i] * theta_p[i] * ct
            + u[i] * theta_pp[i] * ct
            - u[i] * theta_p[i] * theta_p[i] * st;
        jets.push(vec![
            EuclVec::from_vec_unchecked(vec![x1, y1]),
            EuclVec::from_vec_unchecked(vec![x2, y2]),
        ]);
    }
    Ok(SampledCurve::from_parts(
        curve.s().to_vec(),
        points,
        jets,
        curve.jet_source(),
    ))
}

/// Max distance of the points from the chord through the first and last one.
/// Straight developments score ~0.
pub fn chord_deviation(points: &[EuclVec]) -> f64 {
    let first = &points[0];
    let last = points.last().unwrap();
    let dir = match (last - first).normalized() {
        Ok(d) => d,
        Err(_) => return 0.0,
    };
    points
        .iter()
        .map(|p| {
            let rel = p - first;
            let mut off = rel.clone();
            off.axpy(&dir, -rel.dot(&dir));
            off.norm()
        })
        .fold(0.0, f64::max)
}

/// Fit a fixed axis direction to the cone profile: circular cones satisfy
/// ⟨β, d⟩ = cos φ with residual at rounding level.
pub fn circularity_check(cone: &Cone) -> Result<DirectionFit> {
    let analytic = cone
        .profile
        .analytic()
        .ok_or_else(|| Error::InvalidArgument("profile must be analytic".into()))?;
    let (lo, hi) = cone.profile.default_domain();
    let samples = 1024;
    let mut pts = Vec::with_capacity(samples + 1);
    for i in 0..=samples {
        let t = lo + (hi - lo) * i as f64 / samples as f64;
        pts.push(analytic.eval_jets(t, 0).into_iter().next().unwrap());
    }
    fit_constant_direction(&pts)
}

/// Fit a fixed direction to the principal normal N_1 = α'' / ‖α''‖; slant
/// helices keep the residual at rounding level.
pub fn slant_helix_check(curve: &SampledCurve) -> Result<DirectionFit> {
    curve.require_jets(2)?;
    let len = curve.len();
    let mut normals = Vec::with_capacity(len);
    for i in 0..len {
        let acc = curve.jet(i, 2);
        let norm = acc.norm();
        if norm <= 1e-12 {
            return Err(Error::CurvatureVanishes { sample: i });
        }
        normals.push(acc.scaled(1.0 / norm));
    }
    fit_constant_direction(&normals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{
        random_spherical_curve, reparameterize_arclength, sample_jets, AnalyticCurve, CurveSpec,
    };
    use crate::rectify::{check_rectifying, sample_unit_speed};
    use crate::tolerances::{TOL_CIRCULAR, TOL_SLANT};
    use approx::assert_abs_diff_eq;

    fn small_circle_cone(phi: f64, dim: usize) -> Cone {
        let profile = CurveSpec::builtin(AnalyticCurve::SmallCircleSphere { phi, dim });
        make_cone(&EuclVec::zeros(dim), profile).unwrap()
    }

    fn great_circle_cone(dim: usize) -> Cone {
        let profile = CurveSpec::builtin(AnalyticCurve::PlaneCircle { radius: 1.0, dim });
        make_cone(&EuclVec::zeros(dim), profile).unwrap()
    }

    #[test]
    fn great_circle_profile_is_planar() {
        let cone = great_circle_cone(3);
        assert!(cone.planar());
        let fit = circularity_check(&cone).unwrap();
        // circular with level 0: the plane case
        assert!(fit.residual < TOL_CIRCULAR);
        assert_abs_diff_eq!(fit.level, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn small_circle_cone_is_circular_not_planar() {
        let phi = std::f64::consts::FRAC_PI_4;
        let cone = small_circle_cone(phi, 3);
        assert!(!cone.planar());
        let fit = circularity_check(&cone).unwrap();
        assert!(fit.residual < TOL_CIRCULAR);
        assert_abs_diff_eq!(fit.level, phi.cos(), epsilon = 1e-9);
        let axis = EuclVec::basis(3, 2);
        assert!(fit.direction.distance(&axis) < 1e-8);
    }

    #[test]
    fn random_profile_cone_validates_but_is_not_circular() {
        let raw = random_spherical_curve(4, 2, 2).unwrap();
        let profile = raw
            .reparameterized_by_arc_length(raw.default_domain())
            .unwrap();
        let vertex = EuclVec::from_slice(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        let cone = make_cone(&vertex, profile).unwrap();
        assert!(!cone.planar());
        let fit = circularity_check(&cone).unwrap();
        assert!(fit.residual > 1e-2, "unexpectedly circular: {}", fit.residual);
    }

    #[test]
    fn make_cone_rejects_nonspherical_profile() {
        let profile = CurveSpec::builtin(AnalyticCurve::PlaneCircle { radius: 2.0, dim: 3 });
        assert!(matches!(
            make_cone(&EuclVec::zeros(3), profile),
            Err(Error::ProfileNotSpherical { .. })
        ));
    }

    #[test]
    fn secant_samples_satisfy_euler_lagrange() {
        // u = sec t on [-1, 1] at h = 1e-3; the one-sided boundary stencils
        // amplify roundoff, so the rounding-level bound applies to interior
        // samples and a slightly wider one overall
        let n = 2001;
        let h = 2.0 / (n - 1) as f64;
        let u: Vec<f64> = (0..n).map(|i| 1.0 / (-1.0 + i as f64 * h).cos()).collect();
        let (r, max) = euler_lagrange_residual(&u, h).unwrap();
        let interior = r[3..n - 3].iter().map(|x| x.abs()).fold(0.0, f64::max);
        assert!(interior < 1e-8, "interior EL residual {interior}");
        assert!(max < 1e-7, "EL residual {max}");

        // scaled and shifted secant: the a² factor doubles down on the
        // boundary roundoff, interior samples stay at rounding level
        let n = 801;
        let h = 0.8 / (n - 1) as f64;
        let u: Vec<f64> = (0..n)
            .map(|i| 2.0 / (-0.3 + i as f64 * h - 0.3).cos())
            .collect();
        let (r, max) = euler_lagrange_residual(&u, h).unwrap();
        let interior = r[3..n - 3].iter().map(|x| x.abs()).fold(0.0, f64::max);
        assert!(interior < 1e-8, "shifted interior EL residual {interior}");
        assert!(max < 1e-7, "shifted EL residual {max}");
    }

    #[test]
    fn constant_radial_profile_fails_euler_lagrange() {
        let u = vec![1.0; 101];
        let (r, max) = euler_lagrange_residual(&u, 0.01).unwrap();
        for ri in r {
            assert_abs_diff_eq!(ri, -1.0, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn cone_geodesic_passes_both_detectors() {
        let cone = small_circle_cone(std::f64::consts::FRAC_PI_4, 3);
        let spec = cone_geodesic(&cone, 1.0, 0.0, (-0.7, 0.8)).unwrap();
        let curve = sample_unit_speed(&spec, (-0.7, 0.8), 901, 2).unwrap();
        let geo = geodesic_check(&curve, cone.vertex()).unwrap();
        assert!(geo.verdict);
        assert!(!geo.is_ruling);
        assert!(geo.normality_residual < 1e-9);
        assert!(geo.euler_lagrange_residual.unwrap() < 1e-9);
        let rect = check_rectifying(&curve, cone.vertex()).unwrap();
        assert!(rect.verdict);
    }

    #[test]
    fn ruling_is_a_geodesic() {
        let dir = EuclVec::from_slice(&[0.6, 0.8, 0.0]).unwrap();
        let spec = CurveSpec::builtin(AnalyticCurve::StraightLine {
            point: EuclVec::from_slice(&[0.6, 0.8, 0.0]).unwrap(),
            dir,
        });
        let curve = sample_jets(&spec, (0.0, 2.0), 101, 2).unwrap();
        let geo = geodesic_check(&curve, &EuclVec::zeros(3)).unwrap();
        assert!(geo.is_ruling);
        assert!(geo.verdict);
    }

    #[test]
    fn profile_circle_is_not_a_geodesic() {
        let spec = CurveSpec::builtin(AnalyticCurve::PlaneCircle { radius: 1.0, dim: 3 });
        let curve = sample_jets(&spec, (0.0, 3.0), 301, 2).unwrap();
        let geo = geodesic_check(&curve, &EuclVec::zeros(3)).unwrap();
        assert!(!geo.verdict);
        assert!(geo.normality_residual > 0.5);
    }

    #[test]
    fn geodesic_unrolls_to_straight_line() {
        let cone = small_circle_cone(std::f64::consts::FRAC_PI_4, 3);
        let spec = cone_geodesic(&cone, 1.0, 0.2, (-0.5, 0.9)).unwrap();
        let curve = sample_unit_speed(&spec, (-0.5, 0.9), 801, 2).unwrap();
        let flat = unroll_2cone(&cone, &curve).unwrap();
        assert_eq!(flat.dim(), 2);
        assert!(chord_deviation(flat.points()) < 1e-6);
        // the development is an isometry: the image of a unit-speed curve is
        // unit speed, so its arc length matches the input's
        assert!(flat.unit_speed_deviation() < 1e-9);
        let polyline: f64 = (1..flat.len())
            .map(|i| flat.point(i).distance(flat.point(i - 1)))
            .sum();
        let ds = curve.s().last().unwrap() - curve.s()[0];
        assert!((polyline - ds).abs() < 1e-5);
    }

    #[test]
    fn ruling_unrolls_to_radial_segment() {
        let cone = small_circle_cone(0.9, 3);
        // a ruling doubles back in the angular coordinate: expect the stall
        // error rather than a development
        let dir = cone
            .profile()
            .analytic()
            .unwrap()
            .eval_jets(0.3, 0)
            .remove(0);
        let spec = CurveSpec::builtin(AnalyticCurve::StraightLine {
            point: dir.clone(),
            dir,
        });
        let curve = sample_jets(&spec, (0.0, 2.0), 101, 2).unwrap();
        assert!(matches!(
            unroll_2cone(&cone, &curve),
            Err(Error::DoublesBack { .. })
        ));
    }

    #[test]
    fn profile_arc_unrolls_to_unit_circle_arc() {
        let phi = std::f64::consts::FRAC_PI_4;
        let cone = small_circle_cone(phi, 3);
        let profile_curve = sample_jets(cone.profile(), (0.0, 2.0), 201, 2).unwrap();
        let flat = unroll_2cone(&cone, &profile_curve).unwrap();
        for p in flat.points() {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-10);
        }
        // length preserved: profile is unit speed
        assert!(flat.unit_speed_deviation() < 1e-9);
    }

    #[test]
    fn circular_cone_geodesic_is_slant_helix() {
        let phi = std::f64::consts::FRAC_PI_4;
        let cone = small_circle_cone(phi, 3);
        let spec = cone_geodesic(&cone, 1.0, 0.0, (-0.7, 0.8)).unwrap();
        let curve = sample_unit_speed(&spec, (-0.7, 0.8), 901, 2).unwrap();
        let fit = slant_helix_check(&curve).unwrap();
        assert!(fit.residual < TOL_SLANT, "slant residual {}", fit.residual);
        let axis = EuclVec::basis(3, 2);
        assert!(
            fit.direction.distance(&axis) < 1e-6 || fit.direction.distance(&(-&axis)) < 1e-6,
            "axis {:?}",
            fit.direction
        );
        assert_abs_diff_eq!(fit.level.abs(), phi.sin(), epsilon = 1e-6);
    }

    #[test]
    fn noncircular_cone_geodesic_is_not_slant() {
        let raw = random_spherical_curve(3, 4, 2).unwrap();
        let profile = raw
            .reparameterized_by_arc_length(raw.default_domain())
            .unwrap();
        let cone = make_cone(&EuclVec::zeros(3), profile).unwrap();
        let (lo, hi) = cone.profile().default_domain();
        let t0 = 0.5 * (lo + hi);
        let spec = cone_geodesic(&cone, 1.0, t0, (t0 - 0.7, t0 + 0.7)).unwrap();
        let curve = sample_unit_speed(&spec, (t0 - 0.7, t0 + 0.7), 901, 2).unwrap();
        let fit = slant_helix_check(&curve).unwrap();
        assert!(fit.residual > 1e-2, "slant residual {}", fit.residual);
    }

    #[test]
    fn circular_hypercone_geodesic_in_e4_is_slant() {
        // hypercone geodesics lie over great circles of the latitude slice,
        // so the curve spans a 3-subspace and the constant-angle direction is
        // a degenerate family. The fit must still report a slant helix, and
        // the cone axis e_4 must achieve the constant angle sin(phi) when
        // checked directly.
        let phi = 0.6f64;
        let cone = small_circle_cone(phi, 4);
        let spec = cone_geodesic(&cone, 1.3, 0.1, (-0.6, 0.8)).unwrap();
        let curve = sample_unit_speed(&spec, (-0.6, 0.8), 901, 2).unwrap();
        let fit = slant_helix_check(&curve).unwrap();
        assert!(fit.residual < TOL_SLANT, "slant residual {}", fit.residual);

        let axis = EuclVec::basis(4, 3);
        let angles: Vec<f64> = (0..curve.len())
            .map(|i| {
                let n1 = curve.jet(i, 2).clone().normalized().unwrap();
                n1.dot(&axis)
            })
            .collect();
        let mean = angles.iter().sum::<f64>() / angles.len() as f64;
        let dev = angles.iter().map(|a| (a - mean).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-9, "axis angle deviation {dev}");
        assert_abs_diff_eq!(mean.abs(), phi.sin(), epsilon = 1e-9);
    }

    #[test]
    fn slant_check_rejects_vanishing_curvature() {
        let spec = CurveSpec::builtin(AnalyticCurve::StraightLine {
            point: EuclVec::zeros(3),
            dir: EuclVec::basis(3, 0),
        });
        let curve = sample_jets(&spec, (0.0, 1.0), 51, 2).unwrap();
        assert!(matches!(
            slant_helix_check(&curve),
            Err(Error::CurvatureVanishes { .. })
        ));
    }

    #[test]
    fn development_roundtrip_lifts_to_geodesic() {
        // a straight segment in the development lifts to a curve that passes
        // geodesic_check
        let phi = 0.8f64;
        let cone = small_circle_cone(phi, 3);
        // segment from (1.2, θ=0) to (1.2 rotated by θ=0.9), parameterized by
        // arc length of the flat segment
        let p0 = (1.2, 0.0f64);
        let p1 = (1.2 * 0.9f64.cos(), 1.2 * 0.9f64.sin());
        let n = 301;
        let mut t_grid = Vec::with_capacity(n);
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let w = i as f64 / (n - 1) as f64;
            let x = p0.0 + w * (p1.0 - p0.0);
            let y = p0.1 + w * (p1.1 - p0.1);
            let (u, theta) = ((x * x + y * y).sqrt(), y.atan2(x));
            t_grid.push(w);
            pts.push(cone.point(u, theta).unwrap());
        }
        let table = crate::curve::SampledTable::new(t_grid, pts).unwrap();
        let spec = CurveSpec::from_table(table);
        let sampled = sample_jets(&spec, (0.0, 1.0), n, 2).unwrap();
        let curve = reparameterize_arclength(&sampled).unwrap();
        let geo = geodesic_check(&curve, cone.vertex()).unwrap();
        assert!(
            geo.verdict,
            "lifted line should be a geodesic, residual {}",
            geo.normality_residual
        );
    }
}
