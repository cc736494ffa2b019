//! Curvature-profile transport between spherical and rectifying curves,
//! curve synthesis from curvature functions, and the characteristic-equation
//! residuals in dimensions 3 and 4.
//!
//! The transport swaps the first curvature for the ratio κ_1 / ((s + b) κ_0)
//! and shifts the rest down by one slot, taking curvature data of rectifying
//! curves in E^{m+2} to curvature data of spherical curves in E^{m+1} and
//! back. Synthesis realizes profiles as actual curves by integrating the
//! Frenet system, which closes the loop: transported data can be instantiated
//! and handed to the opposite-side detector.

use serde::Serialize;

use crate::curve::{JetSource, SampledCurve};
use crate::error::Error;
use crate::frames::frenet_apparatus;
use crate::linalg::{orthonormality_residual, EuclVec};
use crate::numeric::{fd, rk4};
use crate::rectify::check_rectifying;
use crate::Result;

/// Which side of the correspondence a curvature profile describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSide {
    Spherical,
    Rectifying,
}

/// Curvature functions κ_0, ..., κ_{n-2} of a curve in E^n on a uniform
/// arc-length grid, tagged with the correspondence side and the translation
/// constant b of the tangential coordinate.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureProfile {
    pub dimension: usize,
    pub s: Vec<f64>,
    /// functions[k][i] = κ_k(s_i); the last row may change sign (torsion).
    pub functions: Vec<Vec<f64>>,
    pub side: ProfileSide,
    /// Translation constant of the tangential coordinate (rectifying side).
    pub b: f64,
}

impl CurvatureProfile {
    pub fn new(
        dimension: usize,
        s: Vec<f64>,
        functions: Vec<Vec<f64>>,
        side: ProfileSide,
        b: f64,
    ) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidArgument(
                "profile dimension must be at least 2".into(),
            ));
        }
        if functions.len() != dimension - 1 {
            return Err(Error::InvalidArgument(format!(
                "dimension {dimension} needs {} curvature functions, got {}",
                dimension - 1,
                functions.len()
            )));
        }
        if s.len() < 4 {
            return Err(Error::InsufficientSamples {
                needed: 4,
                got: s.len(),
            });
        }
        for f in &functions {
            if f.len() != s.len() {
                return Err(Error::GridMismatch);
            }
        }
        let h = s[1] - s[0];
        let scale = s.last().unwrap().abs().max(1.0);
        for w in s.windows(2) {
            if ((w[1] - w[0]) - h).abs() > 1e-12 * scale {
                return Err(Error::NonUniformGrid {
                    deviation: ((w[1] - w[0]) - h).abs() / scale,
                });
            }
        }
        Ok(CurvatureProfile {
            dimension,
            s,
            functions,
            side,
            b,
        })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.s[1] - self.s[0]
    }
}

/// Read a curvature profile off a curve via its Frenet apparatus.
pub fn measure_profile(
    curve: &SampledCurve,
    side: ProfileSide,
    b: f64,
) -> Result<CurvatureProfile> {
    let apparatus = frenet_apparatus(curve)?;
    apparatus.frame_field()?;
    CurvatureProfile::new(
        curve.dim(),
        curve.s().to_vec(),
        apparatus.curvatures,
        side,
        b,
    )
}

/// Rectifying side in E^{m+2} → spherical side in E^{m+1}:
/// k_0 = κ_1 / ((s + b) κ_0), k_i = κ_{i+1}, t = τ.
pub fn rectifying_to_spherical(profile: &CurvatureProfile) -> Result<CurvatureProfile> {
    if profile.side != ProfileSide::Rectifying {
        return Err(Error::InvalidArgument(
            "transport expects a rectifying-side profile".into(),
        ));
    }
    if profile.dimension < 3 {
        return Err(Error::InvalidArgument(
            "rectifying side needs dimension at least 3".into(),
        ));
    }
    let b = profile.b;
    for &si in &profile.s {
        if si + b <= 0.0 {
            return Err(Error::TangentialCoordinateVanishes);
        }
    }
    let kappa0 = &profile.functions[0];
    let kappa1 = &profile.functions[1];
    if kappa0.iter().any(|&k| k <= 0.0) || kappa1.iter().any(|&k| k <= 0.0) {
        return Err(Error::InvalidArgument(
            "κ_0 and κ_1 must be positive for the transport".into(),
        ));
    }
    let mut functions = Vec::with_capacity(profile.dimension - 2);
    functions.push(
        profile
            .s
            .iter()
            .zip(kappa0.iter().zip(kappa1.iter()))
            .map(|(&si, (&k0, &k1))| k1 / ((si + b) * k0))
            .collect(),
    );
    for row in &profile.functions[2..] {
        functions.push(row.clone());
    }
    CurvatureProfile::new(
        profile.dimension - 1,
        profile.s.clone(),
        functions,
        ProfileSide::Spherical,
        0.0,
    )
}

/// Spherical side in E^{m+1} → rectifying side in E^{m+2} for a chosen first
/// curvature: κ_0 = kappa0, κ_1 = k_0 (s + b) κ_0, κ_{i+1} = k_i, τ = t.
pub fn spherical_to_rectifying(
    profile: &CurvatureProfile,
    kappa0: &[f64],
    b: f64,
) -> Result<CurvatureProfile> {
    if profile.side != ProfileSide::Spherical {
        return Err(Error::InvalidArgument(
            "transport expects a spherical-side profile".into(),
        ));
    }
    if kappa0.len() != profile.len() {
        return Err(Error::GridMismatch);
    }
    if kappa0.iter().any(|&k| k <= 0.0) {
        return Err(Error::InvalidArgument(
            "kappa0 choice must be strictly positive".into(),
        ));
    }
    for &si in &profile.s {
        if si + b <= 0.0 {
            return Err(Error::TangentialCoordinateVanishes);
        }
    }
    let k0 = &profile.functions[0];
    if k0.iter().any(|&k| k <= 0.0) {
        return Err(Error::InvalidArgument(
            "spherical-side k_0 must be positive".into(),
        ));
    }
    let mut functions = Vec::with_capacity(profile.dimension);
    functions.push(kappa0.to_vec());
    functions.push(
        profile
            .s
            .iter()
            .zip(k0.iter().zip(kappa0.iter()))
            .map(|(&si, (&k, &c))| k * ((si + b) * c))
            .collect(),
    );
    for row in &profile.functions[1..] {
        functions.push(row.clone());
    }
    CurvatureProfile::new(
        profile.dimension + 1,
        profile.s.clone(),
        functions,
        ProfileSide::Rectifying,
        b,
    )
}

/// [`spherical_to_rectifying`] with the convention κ_0 ≡ 1 and b shifted so
/// s + b ≥ 0.1 on the grid.
pub fn spherical_to_rectifying_default(profile: &CurvatureProfile) -> Result<CurvatureProfile> {
    let b = if profile.s[0] >= 0.1 {
        0.0
    } else {
        0.1 - profile.s[0]
    };
    spherical_to_rectifying(profile, &vec![1.0; profile.len()], b)
}

/// Realize a curvature profile as a unit-speed curve by integrating the
/// Frenet system T' = κ_0 N_1, N_i' = -κ_{i-1} N_{i-1} + κ_i N_{i+1} together
/// with α' = T. RK4 at the grid step, frame re-orthonormalized every 16
/// steps; jets are rebuilt from the frame and the curvature derivatives so
/// the output feeds straight back into `frenet_apparatus`.
pub fn curve_from_curvatures(
    profile: &CurvatureProfile,
    initial_frame: &[EuclVec],
    start_point: &EuclVec,
) -> Result<SampledCurve> {
    let n = profile.dimension;
    if initial_frame.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: initial_frame.len(),
        });
    }
    if start_point.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: start_point.dim(),
        });
    }
    for v in initial_frame {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.dim(),
            });
        }
    }
    let deviation = orthonormality_residual(initial_frame);
    if deviation > crate::tolerances::TOL_FRAME_ORTHONORMAL {
        return Err(Error::BadInitialFrame { deviation });
    }

    let len = profile.len();
    let h = profile.step();
    let s0 = profile.s[0];

    // state = [alpha, N_0, ..., N_{n-1}]
    let mut y0 = Vec::with_capacity(n * (n + 1));
    y0.extend_from_slice(start_point.as_slice());
    for v in initial_frame {
        y0.extend_from_slice(v.as_slice());
    }

    let kappa_at = |row: usize, s: f64| -> f64 {
        fd::interpolate_uniform(&profile.functions[row], s0, h, s)
    };

    let rhs = |s: f64, y: &[f64], dy: &mut [f64]| {
        // alpha' = N_0
        dy[..n].copy_from_slice(&y[n..2 * n]);
        for i in 0..n {
            let base = n * (i + 1);
            for d in 0..n {
                let mut acc = 0.0;
                if i > 0 {
                    acc -= kappa_at(i - 1, s) * y[n * i + d];
                }
                if i + 1 < n {
                    acc += kappa_at(i, s) * y[n * (i + 2) + d];
                }
                dy[base + d] = acc;
            }
        }
    };

    let post = |step: usize, y: &mut [f64]| {
        if step % 16 != 0 {
            return;
        }
        let mut frame: Vec<EuclVec> = (0..n)
            .map(|i| EuclVec::from_vec_unchecked(y[n * (i + 1)..n * (i + 2)].to_vec()))
            .collect();
        for i in 0..n {
            for j in 0..i {
                let proj = frame[i].dot(&frame[j]);
                let prev = frame[j].clone();
                frame[i].axpy(&prev, -proj);
            }
            let norm = frame[i].norm();
            frame[i] = frame[i].scaled(1.0 / norm);
        }
        for (i, v) in frame.iter().enumerate() {
            y[n * (i + 1)..n * (i + 2)].copy_from_slice(v.as_slice());
        }
    };

    let states = rk4::integrate(y0, s0, h, len - 1, rhs, post);

    let points: Vec<EuclVec> = states
        .iter()
        .map(|st| EuclVec::from_vec_unchecked(st[..n].to_vec()))
        .collect();
    let frames: Vec<Vec<EuclVec>> = states
        .iter()
        .map(|st| {
            (0..n)
                .map(|i| EuclVec::from_vec_unchecked(st[n * (i + 1)..n * (i + 2)].to_vec()))
                .collect()
        })
        .collect();

    // jets via frame coefficients: alpha^{(k)} = sum_i c_{k,i} N_i with
    // c_{k+1,i} = c_{k,i}' + κ_{i-1} c_{k,i-1} - κ_i c_{k,i+1}
    let jet_order = n.min(5);
    let mut coeff: Vec<Vec<f64>> = vec![vec![0.0; len]; n];
    coeff[0] = vec![1.0; len];
    let mut jets: Vec<Vec<EuclVec>> = vec![Vec::with_capacity(jet_order); len];
    for _k in 1..=jet_order {
        for (i, jet) in jets.iter_mut().enumerate() {
            let mut v = EuclVec::zeros(n);
            for (idx, c) in coeff.iter().enumerate() {
                if c[i] != 0.0 {
                    v.axpy(&frames[i][idx], c[i]);
                }
            }
            jet.push(v);
        }
        // advance the coefficient arrays one derivative
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(n);
        for idx in 0..n {
            let mut row = fd::derivative_uniform(&coeff[idx], h, 1);
            for i in 0..len {
                if idx > 0 {
                    row[i] += profile.functions[idx - 1][i] * coeff[idx - 1][i];
                }
                if idx + 1 < n {
                    row[i] -= profile.functions[idx][i] * coeff[idx + 1][i];
                }
            }
            next.push(row);
        }
        coeff = next;
    }

    Ok(SampledCurve::from_parts(
        profile.s.clone(),
        points,
        jets,
        JetSource::Analytic,
    ))
}

/// Residual of the 3d rectifying characteristic τ / ((s + b) κ) = 1/a.
#[derive(Debug, Clone, Serialize)]
pub struct Rectifying3dReport {
    /// 1 / mean of τ / ((s + b) κ). Signed: a mirror-image curve flips the
    /// torsion under the det = +1 frame convention and with it the sign of
    /// the recovered constant.
    pub a_hat: f64,
    /// max deviation of τ / ((s + b) κ) from its mean.
    pub residual: f64,
    pub b: f64,
    /// Samples skipped because |s + b| fell under the guard band.
    pub excluded_samples: usize,
}

pub fn rectifying_equation_residual_3d(
    curve: &SampledCurve,
    p: &EuclVec,
) -> Result<Rectifying3dReport> {
    if curve.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: curve.dim(),
        });
    }
    let apparatus = frenet_apparatus(curve)?;
    if !apparatus.twisted {
        let (sample, rank) = apparatus.first_deficiency.unwrap_or((0, 0));
        return Err(Error::RankDeficient { sample, rank });
    }
    let kappa = &apparatus.curvatures[0];
    if let Some(i) = kappa.iter().position(|&k| k.abs() <= 1e-12) {
        return Err(Error::CurvatureVanishes { sample: i });
    }
    let b = check_rectifying(curve, p)?.b;
    let tau = &apparatus.curvatures[1];
    let mut g = Vec::with_capacity(curve.len());
    let mut excluded = 0;
    for i in 0..curve.len() {
        let denom = curve.s()[i] + b;
        if denom.abs() <= 1e-6 {
            excluded += 1;
            continue;
        }
        g.push(tau[i] / (denom * kappa[i]));
    }
    if g.is_empty() {
        return Err(Error::TangentialCoordinateVanishes);
    }
    let mean = g.iter().sum::<f64>() / g.len() as f64;
    let residual = g.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
    let a_hat = if mean.abs() > 1e-300 { 1.0 / mean } else { f64::MAX };
    Ok(Rectifying3dReport {
        a_hat,
        residual,
        b,
        excluded_samples: excluded,
    })
}

/// Residual series of the 4d rectifying characteristic
/// h τ + d/ds[ (1/τ) dh/ds ] = 0 with h = (s + b) κ_0 / κ_1.
pub fn rectifying_equation_residual_4d(
    curve: &SampledCurve,
    p: &EuclVec,
) -> Result<(Vec<f64>, f64)> {
    if curve.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: curve.dim(),
        });
    }
    let apparatus = frenet_apparatus(curve)?;
    if !apparatus.twisted {
        let (sample, rank) = apparatus.first_deficiency.unwrap_or((0, 0));
        return Err(Error::RankDeficient { sample, rank });
    }
    let b = check_rectifying(curve, p)?.b;
    let kappa0 = &apparatus.curvatures[0];
    let kappa1 = &apparatus.curvatures[1];
    let tau = &apparatus.curvatures[2];
    if let Some(i) = tau.iter().position(|&t| t.abs() <= 1e-8) {
        return Err(Error::TorsionVanishes { sample: i });
    }
    let h_fun: Vec<f64> = (0..curve.len())
        .map(|i| (curve.s()[i] + b) * kappa0[i] / kappa1[i])
        .collect();
    let step = curve.step();
    let dh = fd::derivative_uniform(&h_fun, step, 1);
    let inner: Vec<f64> = dh.iter().zip(tau.iter()).map(|(d, t)| d / t).collect();
    let dinner = fd::derivative_uniform(&inner, step, 1);
    let r: Vec<f64> = (0..curve.len())
        .map(|i| h_fun[i] * tau[i] + dinner[i])
        .collect();
    let max = r.iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok((r, max))
}

/// Residual series of the 3d spherical characteristic
/// τ/κ + [ (1/τ) (1/κ)' ]' = 0.
pub fn spherical_equation_residual_3d(curve: &SampledCurve) -> Result<(Vec<f64>, f64)> {
    if curve.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: curve.dim(),
        });
    }
    let apparatus = frenet_apparatus(curve)?;
    if !apparatus.twisted {
        let (sample, rank) = apparatus.first_deficiency.unwrap_or((0, 0));
        return Err(Error::RankDeficient { sample, rank });
    }
    let kappa = &apparatus.curvatures[0];
    let tau = &apparatus.curvatures[1];
    if let Some(i) = kappa.iter().position(|&k| k.abs() <= 1e-8) {
        return Err(Error::CurvatureVanishes { sample: i });
    }
    if let Some(i) = tau.iter().position(|&t| t.abs() <= 1e-8) {
        return Err(Error::TorsionVanishes { sample: i });
    }
    let step = curve.step();
    let inv_kappa: Vec<f64> = kappa.iter().map(|k| 1.0 / k).collect();
    let dinv = fd::derivative_uniform(&inv_kappa, step, 1);
    let inner: Vec<f64> = dinv.iter().zip(tau.iter()).map(|(d, t)| d / t).collect();
    let dinner = fd::derivative_uniform(&inner, step, 1);
    let r: Vec<f64> = (0..curve.len())
        .map(|i| tau[i] / kappa[i] + dinner[i])
        .collect();
    let max = r.iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok((r, max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{
        random_spherical_curve, reparameterize_arclength, sample_jets, AnalyticCurve, CurveSpec,
    };
    use crate::rectify::{check_rectifying, construct_rectifying, find_vertex, sample_unit_speed};
    use approx::assert_abs_diff_eq;

    fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn transport_constant_algebra() {
        // κ_0 ≡ 1, κ_1 = s + b gives k_0 ≡ 1
        let s = uniform_grid(0.5, 5.0, 64);
        let b = 0.25;
        let kappa1: Vec<f64> = s.iter().map(|si| si + b).collect();
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![vec![1.0; 64], kappa1],
            ProfileSide::Rectifying,
            b,
        )
        .unwrap();
        let spherical = rectifying_to_spherical(&profile).unwrap();
        assert_eq!(spherical.dimension, 2);
        for k in &spherical.functions[0] {
            assert_abs_diff_eq!(*k, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn transport_circle_to_linear_torsion() {
        // circle k_0 ≡ 1/a with κ_0 ≡ 1 and b = 0 gives κ_1(s) = s/a
        let s = uniform_grid(0.5, 4.0, 32);
        let a = 2.0;
        let profile =
            CurvatureProfile::new(2, s.clone(), vec![vec![1.0 / a; 32]], ProfileSide::Spherical, 0.0)
                .unwrap();
        let rect = spherical_to_rectifying(&profile, &vec![1.0; 32], 0.0).unwrap();
        assert_eq!(rect.dimension, 3);
        for (i, k1) in rect.functions[1].iter().enumerate() {
            assert_abs_diff_eq!(*k1, s[i] / a, epsilon = 1e-15);
        }
    }

    #[test]
    fn transport_round_trip_is_exact_to_rounding() {
        let s = uniform_grid(0.3, 6.0, 128);
        let k0: Vec<f64> = s.iter().map(|si| 0.8 + 0.3 * si.sin()).collect();
        let t: Vec<f64> = s.iter().map(|si| 0.5 + 0.2 * (0.7 * si).cos()).collect();
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![k0.clone(), t.clone()],
            ProfileSide::Spherical,
            0.0,
        )
        .unwrap();
        let rect = spherical_to_rectifying_default(&profile).unwrap();
        let back = rectifying_to_spherical(&rect).unwrap();
        for (a, b) in back.functions[0].iter().zip(k0.iter()) {
            // one multiply + one divide: 2 ulp
            assert!((a - b).abs() <= 4.0 * f64::EPSILON * b.abs());
        }
        for (a, b) in back.functions[1].iter().zip(t.iter()) {
            assert_eq!(a, b, "copied rows must round-trip bitwise");
        }
    }

    #[test]
    fn transport_rejects_sign_change() {
        let s = uniform_grid(-1.0, 1.0, 32);
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![vec![1.0; 32], vec![1.0; 32]],
            ProfileSide::Rectifying,
            0.0,
        )
        .unwrap();
        assert!(matches!(
            rectifying_to_spherical(&profile),
            Err(Error::TangentialCoordinateVanishes)
        ));
    }

    #[test]
    fn synthesized_circle_closes() {
        let r = 1.5;
        let n = 2001;
        let s = uniform_grid(0.0, std::f64::consts::TAU * r, n);
        let profile =
            CurvatureProfile::new(2, s, vec![vec![1.0 / r; n]], ProfileSide::Spherical, 0.0)
                .unwrap();
        let frame = vec![EuclVec::basis(2, 0), EuclVec::basis(2, 1)];
        let start = EuclVec::zeros(2);
        let curve = curve_from_curvatures(&profile, &frame, &start).unwrap();
        assert!(curve.unit_speed_deviation() < 1e-8);
        assert!(
            curve.point(n - 1).distance(curve.point(0)) < 1e-6,
            "closure gap {}",
            curve.point(n - 1).distance(curve.point(0))
        );
    }

    #[test]
    fn synthesized_helix_recovers_curvatures() {
        let n = 2001;
        let s = uniform_grid(0.0, 10.0, n);
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![vec![0.5; n], vec![0.5; n]],
            ProfileSide::Rectifying,
            0.0,
        )
        .unwrap();
        let frame = vec![
            EuclVec::basis(3, 0),
            EuclVec::basis(3, 1),
            EuclVec::basis(3, 2),
        ];
        let curve = curve_from_curvatures(&profile, &frame, &EuclVec::zeros(3)).unwrap();
        let measured = frenet_apparatus(&curve).unwrap();
        for i in 0..n {
            assert_abs_diff_eq!(measured.curvatures[0][i], 0.5, epsilon = 1e-8);
            assert_abs_diff_eq!(measured.curvatures[1][i], 0.5, epsilon = 1e-8);
        }
    }

    #[test]
    fn synthesis_round_trip_with_varying_profile() {
        let n = 4001;
        let s = uniform_grid(0.0, 10.0, n);
        let kappa: Vec<f64> = s.iter().map(|si| 1.0 + 0.3 * (0.7 * si).sin()).collect();
        let tau: Vec<f64> = s.iter().map(|si| 0.5 + 0.2 * (0.9 * si).cos()).collect();
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![kappa.clone(), tau.clone()],
            ProfileSide::Rectifying,
            0.0,
        )
        .unwrap();
        let frame = vec![
            EuclVec::basis(3, 0),
            EuclVec::basis(3, 1),
            EuclVec::basis(3, 2),
        ];
        let curve = curve_from_curvatures(&profile, &frame, &EuclVec::zeros(3)).unwrap();
        let measured = frenet_apparatus(&curve).unwrap();
        let mut worst = 0.0f64;
        for i in 0..n {
            worst = worst.max((measured.curvatures[0][i] - kappa[i]).abs());
            worst = worst.max((measured.curvatures[1][i] - tau[i]).abs());
        }
        assert!(worst < 1e-6, "profile recovery error {worst}");
    }

    #[test]
    fn rectifying_3d_equation_recovers_a() {
        let beta = CurveSpec::builtin(AnalyticCurve::SmallCircleSphere {
            phi: std::f64::consts::FRAC_PI_4,
            dim: 3,
        });
        for (a, t0) in [(1.0, 0.0), (2.0, 0.2)] {
            let spec = construct_rectifying(&beta, &EuclVec::zeros(3), a, t0).unwrap();
            let curve = sample_unit_speed(&spec, (t0 + 0.05, t0 + 0.85), 1501, 3).unwrap();
            let report = rectifying_equation_residual_3d(&curve, &EuclVec::zeros(3)).unwrap();
            assert_abs_diff_eq!(report.a_hat, a, epsilon = 1e-5);
            assert!(report.residual < 1e-6, "residual {}", report.residual);
            assert_eq!(report.excluded_samples, 0);
        }
    }

    #[test]
    fn helix_fails_3d_equation() {
        let spec = CurveSpec::builtin(AnalyticCurve::Helix { a: 1.0, b: 1.0 });
        let c = sample_jets(&spec, (0.0, std::f64::consts::TAU), 1201, 3).unwrap();
        let curve = reparameterize_arclength(&c).unwrap();
        let fit = find_vertex(&curve).unwrap();
        let report = rectifying_equation_residual_3d(&curve, &fit.vertex).unwrap();
        assert!(report.residual > 1e-2, "residual {}", report.residual);
    }

    #[test]
    fn constructed_e4_satisfies_4d_equation() {
        let raw = random_spherical_curve(4, 6, 2).unwrap();
        let beta = raw
            .reparameterized_by_arc_length(raw.default_domain())
            .unwrap();
        let (_, hi) = beta.default_domain();
        let t0 = hi / 2.0;
        let vertex = EuclVec::zeros(4);
        let spec = construct_rectifying(&beta, &vertex, 1.0, t0).unwrap();
        let curve = sample_unit_speed(&spec, (t0 + 0.05, t0 + 0.75), 2001, 4).unwrap();
        let rect = check_rectifying(&curve, &vertex).unwrap();
        assert!(rect.verdict);
        let (_, max) = rectifying_equation_residual_4d(&curve, &vertex).unwrap();
        assert!(max < 1e-4, "4d equation residual {max}");
    }

    #[test]
    fn constant_curvature_e4_fails_4d_equation() {
        // constant (κ_0, κ_1, τ): h τ is linear in s and the derivative term
        // vanishes, so the residual grows like (s + b) κ_0 τ / κ_1
        let n = 2001;
        let s = uniform_grid(0.0, 8.0, n);
        let profile = CurvatureProfile::new(
            4,
            s,
            vec![vec![1.0; n], vec![0.7; n], vec![0.5; n]],
            ProfileSide::Rectifying,
            0.0,
        )
        .unwrap();
        let frame = (0..4).map(|i| EuclVec::basis(4, i)).collect::<Vec<_>>();
        let curve = curve_from_curvatures(&profile, &frame, &EuclVec::zeros(4)).unwrap();
        let fit = find_vertex(&curve).unwrap();
        let (_, max) = rectifying_equation_residual_4d(&curve, &fit.vertex).unwrap();
        assert!(max > 1e-2, "expected failure, residual {max}");
    }

    #[test]
    fn spherical_curve_satisfies_spherical_equation() {
        // closed spherical curves always have torsion zeros (τ vanishes with
        // (1/κ)'), so restrict to an arc where |τ| stays clear of zero
        let raw = random_spherical_curve(3, 1, 2).unwrap();
        let spec = raw
            .reparameterized_by_arc_length(raw.default_domain())
            .unwrap();
        let sweep = sample_jets(&spec, spec.default_domain(), 801, 3).unwrap();
        let ap = frenet_apparatus(&sweep).unwrap();
        assert!(ap.twisted);
        // longest run with |τ| > 0.1
        let tau = &ap.curvatures[1];
        let (mut best, mut cur, mut start, mut range) = (0usize, 0usize, 0usize, (0usize, 0usize));
        for (i, t) in tau.iter().enumerate() {
            if t.abs() > 0.1 {
                if cur == 0 {
                    start = i;
                }
                cur += 1;
                if cur > best {
                    best = cur;
                    range = (start, i);
                }
            } else {
                cur = 0;
            }
        }
        assert!(best > 100, "no usable torsion run");
        let (s_lo, s_hi) = (sweep.s()[range.0], sweep.s()[range.1]);
        let curve = sample_jets(&spec, (s_lo, s_hi), 2001, 3).unwrap();
        let (_, max) = spherical_equation_residual_3d(&curve).unwrap();
        assert!(max < 1e-4, "spherical equation residual {max}");
    }

    #[test]
    fn helix_violates_spherical_equation_by_one() {
        // constant κ kills the second term, leaving r = τ/κ = 1
        let spec = CurveSpec::builtin(AnalyticCurve::Helix { a: 1.0, b: 1.0 });
        let c = sample_jets(&spec, (0.0, std::f64::consts::TAU), 1201, 3).unwrap();
        let curve = reparameterize_arclength(&c).unwrap();
        let (r, _) = spherical_equation_residual_3d(&curve).unwrap();
        for ri in r {
            assert_abs_diff_eq!(ri, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn plane_curve_errors_on_vanishing_torsion() {
        let mut params = std::collections::BTreeMap::new();
        params.insert("r".to_string(), 1.0);
        params.insert("n".to_string(), 3.0);
        let spec = crate::curve::make_builtin_curve("plane_circle", &params).unwrap();
        let c = sample_jets(&spec, spec.default_domain(), 601, 3).unwrap();
        let curve = reparameterize_arclength(&c).unwrap();
        assert!(matches!(
            spherical_equation_residual_3d(&curve),
            Err(Error::RankDeficient { .. }) | Err(Error::TorsionVanishes { .. })
        ));
    }

    #[test]
    fn theorem5_coordinates_on_spherical_curve() {
        // C_0 = 0 and C_1 = -1/k_0 for a spherical curve about its center
        use crate::frames::{coordinate_functions, FrameTag};
        let spec = random_spherical_curve(3, 12, 2).unwrap();
        let c = sample_jets(&spec, (0.0, std::f64::consts::TAU), 1501, 3).unwrap();
        let curve = reparameterize_arclength(&c).unwrap();
        let ap = frenet_apparatus(&curve).unwrap();
        let coords = coordinate_functions(
            &curve,
            ap.frame_field().unwrap(),
            &EuclVec::zeros(3),
            FrameTag::Frenet,
        )
        .unwrap();
        let mut worst = 0.0f64;
        for i in 0..curve.len() {
            worst = worst.max(coords.a[i][0].abs());
            worst = worst.max((coords.a[i][1] + 1.0 / ap.curvatures[0][i]).abs());
        }
        assert!(worst < 1e-5, "coordinate deviation {worst}");
    }
}
