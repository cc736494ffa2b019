//! Moving frames along curves.
//!
//! The Frenet apparatus comes from Gram-Schmidt on the derivative jets
//! {α', α'', ..., α^(n)}. Writing that as a QR factorization with positive
//! diagonal R, the Frenet equations force κ_k = R_{k+1,k+1} / R_{k,k}, so the
//! curvatures come straight from the orthogonalization diagnostics — no frame
//! differentiation involved. The discrete Frenet-equation residual (frames
//! differentiated by finite differences) stays available as an independent
//! cross-check.
//!
//! Torsion is signed: κ_0..κ_{m-1} are positive by construction and the last
//! frame vector is flipped to make the frame positively oriented, which puts
//! the orientation information into τ = κ_m.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curve::{JetSource, SampledCurve};
use crate::error::Error;
use crate::linalg::{
    self, orthonormality_residual, smallest_eigenpair, solve_symmetric_min_norm, EuclVec,
};
use crate::numeric::fd;
use crate::numeric::rk4;
use crate::tolerances::{RANK_TOL_ANALYTIC, RANK_TOL_FD, TOL_CLASSIFY, TOL_FRAME_ORTHONORMAL};
use crate::Result;

/// An ordered orthonormal frame attached to every sample of a curve.
#[derive(Debug, Clone)]
pub struct FrameField {
    pub s: Vec<f64>,
    /// vectors[i] = frame at sample i, ordered (V_0 = T, V_1, ..., V_{m+1}).
    pub vectors: Vec<Vec<EuclVec>>,
}

impl FrameField {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn frame_size(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn at(&self, i: usize) -> &[EuclVec] {
        &self.vectors[i]
    }

    /// Worst orthonormality defect across all samples.
    pub fn max_orthonormality_residual(&self) -> f64 {
        self.vectors
            .iter()
            .map(|f| orthonormality_residual(f))
            .fold(0.0, f64::max)
    }

    /// One frame index as a vector series over the samples.
    fn component(&self, idx: usize) -> Vec<EuclVec> {
        self.vectors.iter().map(|f| f[idx].clone()).collect()
    }
}

/// Frenet frame, curvatures, and twistedness diagnostics for a unit-speed
/// curve in E^n.
#[derive(Debug, Clone)]
pub struct FrenetApparatus {
    pub s: Vec<f64>,
    /// Present when the jets have rank n everywhere (twisted) or rank n-1
    /// everywhere (hyperplane curve; frame completed by the constant normal).
    pub frames: Option<FrameField>,
    /// curvatures[k] = κ_k(s); the last row is the signed torsion.
    pub curvatures: Vec<Vec<f64>>,
    /// Jets linearly independent to full order n at every sample.
    pub twisted: bool,
    /// Frame obtained by completing rank n-1 jets with the unit normal of the
    /// carrying hyperplane (τ ≡ 0).
    pub completed: bool,
    pub min_rank: usize,
    /// First (sample index, rank) where the jets lost full rank.
    pub first_deficiency: Option<(usize, usize)>,
    pub jet_source: JetSource,
}

impl FrenetApparatus {
    /// m in the frame layout {T, N_1, ..., N_m, B}; the ambient dimension is
    /// m + 2.
    pub fn m(&self) -> usize {
        self.curvatures.len().saturating_sub(1)
    }

    pub fn frame_field(&self) -> Result<&FrameField> {
        self.frames.as_ref().ok_or({
            let (sample, rank) = self.first_deficiency.unwrap_or((0, 0));
            Error::RankDeficient { sample, rank }
        })
    }

    /// Tridiagonal skew coefficient matrices of the Frenet equations.
    pub fn to_moving_frame(&self) -> Result<MovingFrame> {
        let field = self.frame_field()?.clone();
        let n = field.frame_size();
        let len = field.len();
        let mut coefficients = Vec::with_capacity(len);
        for i in 0..len {
            let mut k = DMatrix::<f64>::zeros(n, n);
            for (row, kappa) in self.curvatures.iter().enumerate() {
                k[(row, row + 1)] = kappa[i];
                k[(row + 1, row)] = -kappa[i];
            }
            coefficients.push(k);
        }
        Ok(MovingFrame {
            s: self.s.clone(),
            field,
            coefficients,
            tag: FrameTag::Frenet,
        })
    }
}

/// Default rank tolerance for the jet source.
fn rank_tol_for(source: JetSource) -> f64 {
    match source {
        JetSource::Analytic => RANK_TOL_ANALYTIC,
        JetSource::FiniteDifference => RANK_TOL_FD,
    }
}

/// Build the Frenet apparatus of a unit-speed curve with jets up to the
/// ambient dimension.
pub fn frenet_apparatus(curve: &SampledCurve) -> Result<FrenetApparatus> {
    frenet_apparatus_with_tol(curve, rank_tol_for(curve.jet_source()))
}

pub fn frenet_apparatus_with_tol(curve: &SampledCurve, rank_tol: f64) -> Result<FrenetApparatus> {
    let n = curve.dim();
    curve.require_unit_speed()?;
    curve.require_jets(n)?;
    let len = curve.len();

    let mut bases: Vec<Vec<EuclVec>> = Vec::with_capacity(len);
    let mut diags: Vec<Vec<f64>> = Vec::with_capacity(len);
    let mut min_rank = n;
    let mut first_deficiency = None;
    for i in 0..len {
        let jets: Vec<EuclVec> = (1..=n).map(|k| curve.jet(i, k).clone()).collect();
        let (basis, diag, prefix) = linalg::orthonormalize_prefix(&jets, rank_tol)?;
        if prefix < n && first_deficiency.is_none() {
            first_deficiency = Some((i, prefix));
        }
        min_rank = min_rank.min(prefix);
        bases.push(basis);
        diags.push(diag);
    }

    let twisted = min_rank == n;
    let max_rank: usize = bases.iter().map(Vec::len).max().unwrap_or(0);
    let completed = !twisted && min_rank == n - 1 && max_rank == n - 1;

    if !twisted && !completed {
        return Ok(FrenetApparatus {
            s: curve.s().to_vec(),
            frames: None,
            curvatures: Vec::new(),
            twisted: false,
            completed: false,
            min_rank,
            first_deficiency,
            jet_source: curve.jet_source(),
        });
    }

    if completed {
        for basis in bases.iter_mut() {
            let last = hyperplane_normal(basis, n);
            basis.push(last);
        }
    }

    // positive orientation: flip the last vector when det < 0; the sign goes
    // into the torsion
    let mut curvatures = vec![vec![0.0; len]; n - 1];
    let mut frames = Vec::with_capacity(len);
    for (i, (mut basis, diag)) in bases.into_iter().zip(diags.into_iter()).enumerate() {
        let det = frame_determinant(&basis);
        let sigma = if det < 0.0 { -1.0 } else { 1.0 };
        if sigma < 0.0 {
            let last = basis.len() - 1;
            basis[last] = -&basis[last];
        }
        for k in 0..n - 2 {
            if k + 1 < diag.len() {
                curvatures[k][i] = diag[k + 1] / diag[k];
            }
        }
        // last curvature (torsion) carries the orientation sign; zero for
        // completed hyperplane frames
        if twisted {
            curvatures[n - 2][i] = sigma * diag[n - 1] / diag[n - 2];
        }
        frames.push(basis);
    }

    Ok(FrenetApparatus {
        s: curve.s().to_vec(),
        frames: Some(FrameField {
            s: curve.s().to_vec(),
            vectors: frames,
        }),
        curvatures,
        twisted,
        completed,
        min_rank,
        first_deficiency,
        jet_source: curve.jet_source(),
    })
}

/// Unit vector orthogonal to a rank n-1 basis, chosen deterministically.
fn hyperplane_normal(basis: &[EuclVec], n: usize) -> EuclVec {
    let mut best: Option<EuclVec> = None;
    let mut best_norm = -1.0;
    for j in 0..n {
        let mut w = EuclVec::basis(n, j);
        for _ in 0..2 {
            for q in basis {
                let proj = w.dot(q);
                w.axpy(q, -proj);
            }
        }
        let norm = w.norm();
        if norm > best_norm {
            best_norm = norm;
            best = Some(w.scaled(1.0 / norm));
        }
    }
    best.expect("dimension must be positive")
}

fn frame_determinant(frame: &[EuclVec]) -> f64 {
    let n = frame.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (j, v) in frame.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = v[i];
        }
    }
    m.determinant()
}

/// Discrete Frenet-equation residual: frames differentiated by finite
/// differences against the tridiagonal system. Independent of the QR route
/// that produced the curvatures.
pub fn frenet_equation_residual(apparatus: &FrenetApparatus) -> Result<f64> {
    let field = apparatus.frame_field()?;
    let n = field.frame_size();
    let h = field.s[1] - field.s[0];
    let mut worst = 0.0f64;
    for idx in 0..n {
        let component = field.component(idx);
        let derivative = fd::derivative_uniform_vec(&component, h, 1);
        for (i, d) in derivative.iter().enumerate() {
            let mut expect = EuclVec::zeros(component[0].dim());
            if idx > 0 {
                expect.axpy(&field.vectors[i][idx - 1], -apparatus.curvatures[idx - 1][i]);
            }
            if idx + 1 < n {
                expect.axpy(&field.vectors[i][idx + 1], apparatus.curvatures[idx][i]);
            }
            worst = worst.max(d.distance(&expect));
        }
    }
    Ok(worst)
}

/// Which construction produced a moving frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameTag {
    Frenet,
    RotationMinimizing,
}

/// Any orthonormal moving frame along a curve together with its skew
/// coefficient matrix k_ij(s) = ⟨V_i', V_j⟩.
#[derive(Debug, Clone)]
pub struct MovingFrame {
    pub s: Vec<f64>,
    pub field: FrameField,
    pub coefficients: Vec<DMatrix<f64>>,
    pub tag: FrameTag,
}

/// Transport the given initial normal fields along the curve so that each
/// stays rotation minimizing: V' = -⟨V, T'⟩ T (the derivative is purely
/// tangential, i.e. parallel in the normal bundle). RK4 at the sample step
/// with re-orthonormalization every 16 steps.
pub fn rm_frame(curve: &SampledCurve, initial_normals: &[EuclVec]) -> Result<MovingFrame> {
    curve.require_unit_speed()?;
    curve.require_jets(2)?;
    if initial_normals.is_empty() {
        return Err(Error::EmptyInput("initial normals"));
    }
    let dim = curve.dim();
    let tangent0 = curve.jet(0, 1).clone();
    let mut check = vec![tangent0.clone()];
    check.extend_from_slice(initial_normals);
    let deviation = orthonormality_residual(&check);
    if deviation > TOL_FRAME_ORTHONORMAL {
        return Err(Error::BadInitialFrame { deviation });
    }

    let m = initial_normals.len();
    let h = curve.step();
    let steps = curve.len() - 1;
    let s0 = curve.s()[0];

    let mut y0 = Vec::with_capacity(m * dim);
    for v in initial_normals {
        y0.extend_from_slice(v.as_slice());
    }

    let rhs = |s: f64, y: &[f64], dy: &mut [f64]| {
        let jets = curve.eval_dense(s, 2);
        let tangent = &jets[1];
        let accel = &jets[2];
        for f in 0..m {
            let v = &y[f * dim..(f + 1) * dim];
            let mut dot = 0.0;
            for d in 0..dim {
                dot += v[d] * accel[d];
            }
            for d in 0..dim {
                dy[f * dim + d] = -dot * tangent[d];
            }
        }
    };

    let post = |step: usize, y: &mut [f64]| {
        if step % 16 != 0 {
            return;
        }
        let s = s0 + step as f64 * h;
        let t = &curve.eval_dense(s, 1)[1];
        let mut fields: Vec<EuclVec> = (0..m)
            .map(|f| EuclVec::from_vec_unchecked(y[f * dim..(f + 1) * dim].to_vec()))
            .collect();
        for f in 0..m {
            let proj_t = fields[f].dot(t);
            fields[f].axpy(t, -proj_t);
            for g in 0..f {
                let proj = fields[f].dot(&fields[g]);
                let prev = fields[g].clone();
                fields[f].axpy(&prev, -proj);
            }
            let norm = fields[f].norm();
            fields[f] = fields[f].scaled(1.0 / norm);
        }
        for (f, v) in fields.iter().enumerate() {
            y[f * dim..(f + 1) * dim].copy_from_slice(v.as_slice());
        }
    };

    let states = rk4::integrate(y0, s0, h, steps, rhs, post);

    let mut vectors = Vec::with_capacity(curve.len());
    let mut coefficients = Vec::with_capacity(curve.len());
    for (i, state) in states.iter().enumerate() {
        let tangent = curve.jet(i, 1).clone();
        let accel = curve.jet(i, 2);
        let mut frame = Vec::with_capacity(m + 1);
        frame.push(tangent);
        for f in 0..m {
            frame.push(EuclVec::from_vec_unchecked(
                state[f * dim..(f + 1) * dim].to_vec(),
            ));
        }
        // k_{0j} = ⟨T', V_j⟩; the normal-normal block vanishes for parallel
        // fields, which is exactly the transport being integrated
        let mut k = DMatrix::<f64>::zeros(m + 1, m + 1);
        for j in 1..=m {
            let val = accel.dot(&frame[j]);
            k[(0, j)] = val;
            k[(j, 0)] = -val;
        }
        vectors.push(frame);
        coefficients.push(k);
    }

    Ok(MovingFrame {
        s: curve.s().to_vec(),
        field: FrameField {
            s: curve.s().to_vec(),
            vectors,
        },
        coefficients,
        tag: FrameTag::RotationMinimizing,
    })
}

/// Residuals of the rotation-minimizing property measured by finite
/// differences of the transported fields.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RmResiduals {
    /// max ‖V' - ⟨V', T⟩ T‖: the normal part of V', zero for parallel fields.
    pub normal_part: f64,
    /// max |⟨V_i', V_j⟩| over normal fields i ≠ j.
    pub normal_coupling: f64,
}

/// Check the RM defining property on interior samples.
pub fn rm_residuals(curve: &SampledCurve, frame: &MovingFrame) -> RmResiduals {
    let h = curve.step();
    let len = curve.len();
    let m = frame.field.frame_size() - 1;
    let mut normal_part = 0.0f64;
    let mut normal_coupling = 0.0f64;
    let margin = 4.min(len / 8);
    for f in 1..=m {
        let component = frame.field.component(f);
        let derivative = fd::derivative_uniform_vec(&component, h, 1);
        for i in margin..len - margin {
            let t = curve.jet(i, 1);
            let mut normal = derivative[i].clone();
            normal.axpy(t, -derivative[i].dot(t));
            normal_part = normal_part.max(normal.norm());
            for g in 1..=m {
                if g != f {
                    normal_coupling =
                        normal_coupling.max(derivative[i].dot(&frame.field.vectors[i][g]).abs());
                }
            }
        }
    }
    RmResiduals {
        normal_part,
        normal_coupling,
    }
}

/// Projections A_i(s) = ⟨α(s) − p, V_i(s)⟩ of a curve onto a moving frame.
#[derive(Debug, Clone)]
pub struct CoordinateFunctions {
    pub vertex: EuclVec,
    pub s: Vec<f64>,
    /// a[i][j] = A_j(s_i)
    pub a: Vec<Vec<f64>>,
    /// ρ(s) = ‖α(s) − p‖
    pub rho: Vec<f64>,
    pub frame_tag: FrameTag,
}

impl CoordinateFunctions {
    /// max |Σ A_i² − ρ²| over the samples; small only for complete frames.
    pub fn pythagoras_residual(&self) -> f64 {
        self.a
            .iter()
            .zip(self.rho.iter())
            .map(|(row, rho)| {
                let sum: f64 = row.iter().map(|x| x * x).sum();
                (sum - rho * rho).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Project α − p onto a frame field defined on the same grid.
pub fn coordinate_functions(
    curve: &SampledCurve,
    field: &FrameField,
    p: &EuclVec,
    frame_tag: FrameTag,
) -> Result<CoordinateFunctions> {
    if field.len() != curve.len() {
        return Err(Error::GridMismatch);
    }
    let scale = curve.s().last().unwrap().abs().max(1.0);
    for (a, b) in curve.s().iter().zip(field.s.iter()) {
        if (a - b).abs() > 1e-12 * scale {
            return Err(Error::GridMismatch);
        }
    }
    if p.dim() != curve.dim() {
        return Err(Error::DimensionMismatch {
            expected: curve.dim(),
            got: p.dim(),
        });
    }
    let mut a = Vec::with_capacity(curve.len());
    let mut rho = Vec::with_capacity(curve.len());
    for i in 0..curve.len() {
        let delta = curve.point(i) - p;
        rho.push(delta.norm());
        a.push(field.vectors[i].iter().map(|v| delta.dot(v)).collect());
    }
    Ok(CoordinateFunctions {
        vertex: p.clone(),
        s: curve.s().to_vec(),
        a,
        rho,
        frame_tag,
    })
}

/// Integrate the coordinate ODE A_0' = 1 + Σ k_{0j} A_j, A_i' = Σ k_{ij} A_j
/// for given skew coefficients on a uniform grid. RK4 with 4-point Lagrange
/// interpolation of the coefficients at half steps.
pub fn integrate_coordinate_ode(
    coefficients: &[DMatrix<f64>],
    grid: &[f64],
    a_init: &[f64],
) -> Result<Vec<Vec<f64>>> {
    if coefficients.len() != grid.len() {
        return Err(Error::GridMismatch);
    }
    if grid.len() < 4 {
        return Err(Error::InsufficientSamples {
            needed: 4,
            got: grid.len(),
        });
    }
    let n = a_init.len();
    let h = grid[1] - grid[0];
    let scale = grid.last().unwrap().abs().max(1.0);
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-12 * scale {
            return Err(Error::NonUniformGrid {
                deviation: ((w[1] - w[0]) - h).abs() / scale,
            });
        }
    }
    for k in coefficients {
        if k.nrows() != n || k.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: k.nrows(),
            });
        }
        let skew = (k + k.transpose()).abs().max();
        if skew > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "coefficient matrix not skew-symmetric (defect {skew:.3e})"
            )));
        }
    }

    // per-entry time series for interpolation
    let mut entries = vec![vec![0.0; grid.len()]; n * n];
    for (t, k) in coefficients.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j][t] = k[(i, j)];
            }
        }
    }
    let s0 = grid[0];
    let rhs = |s: f64, y: &[f64], dy: &mut [f64]| {
        for i in 0..n {
            let mut acc = if i == 0 { 1.0 } else { 0.0 };
            for j in 0..n {
                let kij = fd::interpolate_uniform(&entries[i * n + j], s0, h, s);
                acc += kij * y[j];
            }
            dy[i] = acc;
        }
    };
    let states = rk4::integrate(a_init.to_vec(), s0, h, grid.len() - 1, rhs, |_, _| {});
    Ok(states)
}

/// Geometric classification of a curve: carried by a hyperplane, by a sphere,
/// or by neither.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Hyperplane { normal: EuclVec, offset: f64 },
    Sphere { center: EuclVec, radius: f64 },
    Neither,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// Residual of the winning fit (min of the two when Neither).
    pub residual: f64,
    pub hyperplane_residual: f64,
    pub sphere_residual: f64,
}

/// Least-squares hyperplane and sphere fits; the verdict goes to whichever
/// fit beats the classification tolerance, hyperplane first on ties.
pub fn classify_rm_normal(curve: &SampledCurve) -> Result<ClassificationResult> {
    classify_rm_normal_with_tol(curve, TOL_CLASSIFY)
}

pub fn classify_rm_normal_with_tol(
    curve: &SampledCurve,
    tol: f64,
) -> Result<ClassificationResult> {
    let n = curve.dim();
    let len = curve.len();
    if len < n + 2 {
        return Err(Error::InsufficientSamples {
            needed: n + 2,
            got: len,
        });
    }

    // hyperplane: smallest principal direction of the centered cloud
    let mut centroid = EuclVec::zeros(n);
    for p in curve.points() {
        centroid.axpy(p, 1.0 / len as f64);
    }
    let mut cov = DMatrix::<f64>::zeros(n, n);
    for p in curve.points() {
        let d = p - &centroid;
        for i in 0..n {
            for j in 0..n {
                cov[(i, j)] += d[i] * d[j];
            }
        }
    }
    let (_, normal_vec) = smallest_eigenpair(&cov);
    let mut normal = EuclVec::from_vec_unchecked(normal_vec.as_slice().to_vec());
    normal = normal.normalized()?;
    let mut offset = centroid.dot(&normal);
    if offset < 0.0 {
        normal = -&normal;
        offset = -offset;
    } else if offset.abs() < 1e-12 {
        if let Some(x) = normal.iter().find(|x| x.abs() > 1e-12) {
            if *x < 0.0 {
                normal = -&normal;
            }
        }
    }
    let hyperplane_residual = curve
        .points()
        .iter()
        .map(|p| (p.dot(&normal) - offset).abs())
        .fold(0.0, f64::max);

    // sphere: ‖α − c‖² = R² linearized as 2⟨α, c⟩ + (R² − ‖c‖²) = ‖α‖²
    let mut mat = DMatrix::<f64>::zeros(n + 1, n + 1);
    let mut rhs = DVector::<f64>::zeros(n + 1);
    for p in curve.points() {
        let mut row = DVector::<f64>::zeros(n + 1);
        for i in 0..n {
            row[i] = 2.0 * p[i];
        }
        row[n] = 1.0;
        let b = p.norm_squared();
        mat += &row * row.transpose();
        rhs += row * b;
    }
    let (sol, _dropped) = solve_symmetric_min_norm(&mat, &rhs, 1e-12);
    let center = EuclVec::from_vec_unchecked(sol.as_slice()[..n].to_vec());
    let radius_sq = sol[n] + center.norm_squared();
    let (sphere_residual, radius) = if radius_sq > 0.0 {
        let radius = radius_sq.sqrt();
        let res = curve
            .points()
            .iter()
            .map(|p| (p.distance(&center) - radius).abs())
            .fold(0.0, f64::max);
        (res, radius)
    } else {
        (f64::INFINITY, 0.0)
    };

    let (verdict, residual) = if hyperplane_residual < tol {
        (Verdict::Hyperplane { normal, offset }, hyperplane_residual)
    } else if sphere_residual < tol {
        (Verdict::Sphere { center, radius }, sphere_residual)
    } else {
        (Verdict::Neither, hyperplane_residual.min(sphere_residual))
    };

    Ok(ClassificationResult {
        verdict,
        residual,
        hyperplane_residual,
        sphere_residual,
    })
}
