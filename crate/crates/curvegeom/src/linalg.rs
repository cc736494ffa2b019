//! Dimension-generic dense vectors, orthonormalization with numerical rank,
//! and constant-direction fitting.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::Error;
use crate::Result;

/// A point or vector of Euclidean n-space.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EuclVec {
    coords: Vec<f64>,
}

impl EuclVec {
    /// Build a vector, validating that every entry is finite.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("vector coordinates"));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(EuclVec { coords })
    }

    /// Internal constructor for values already known finite.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        EuclVec { coords }
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        EuclVec {
            coords: vec![0.0; dim],
        }
    }

    /// i-th standard basis vector of E^dim.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.coords.iter()
    }

    pub fn dot(&self, other: &EuclVec) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(&self, other: &EuclVec) -> f64 {
        self.sub(other).norm()
    }

    pub fn scaled(&self, k: f64) -> EuclVec {
        EuclVec {
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    /// self + k * other.
    pub fn add_scaled(&self, other: &EuclVec, k: f64) -> EuclVec {
        debug_assert_eq!(self.dim(), other.dim());
        EuclVec {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + k * b)
                .collect(),
        }
    }

    /// In-place self += k * other.
    pub fn axpy(&mut self, other: &EuclVec, k: f64) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(other.coords.iter()) {
            *a += k * b;
        }
    }

    pub fn normalized(&self) -> Result<EuclVec> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero vector".into(),
            ));
        }
        Ok(self.scaled(1.0 / n))
    }

    /// Cross product, defined for dimension 3 only.
    pub fn cross(&self, other: &EuclVec) -> EuclVec {
        assert_eq!(self.dim(), 3);
        assert_eq!(other.dim(), 3);
        let a = &self.coords;
        let b = &other.coords;
        EuclVec {
            coords: vec![
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ],
        }
    }

    pub(crate) fn from_dvector(v: &DVector<f64>) -> Self {
        EuclVec {
            coords: v.as_slice().to_vec(),
        }
    }
}

impl Index<usize> for EuclVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl IndexMut<usize> for EuclVec {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.coords[i]
    }
}

impl Add for &EuclVec {
    type Output = EuclVec;
    fn add(self, rhs: &EuclVec) -> EuclVec {
        self.add_scaled(rhs, 1.0)
    }
}

impl Sub for &EuclVec {
    type Output = EuclVec;
    fn sub(self, rhs: &EuclVec) -> EuclVec {
        self.add_scaled(rhs, -1.0)
    }
}

impl Mul<f64> for &EuclVec {
    type Output = EuclVec;
    fn mul(self, k: f64) -> EuclVec {
        self.scaled(k)
    }
}

impl Neg for &EuclVec {
    type Output = EuclVec;
    fn neg(self) -> EuclVec {
        self.scaled(-1.0)
    }
}

/// Result of fitting a fixed direction `d` with `⟨v_i, d⟩ ≈ level`.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionFit {
    /// Unit direction, sign chosen so `level >= 0`.
    pub direction: EuclVec,
    /// The fitted constant inner product.
    pub level: f64,
    /// Max absolute deviation `|⟨v_i, direction⟩ - level|` over the samples.
    pub residual: f64,
}

/// Gram-Schmidt with renormalization and a relative rank cutoff.
///
/// Vectors whose residual after projection is below `rank_tol` times the
/// largest input norm are dropped; the returned rank is the number of kept
/// vectors. A second projection pass keeps the output orthonormal to 1e-12
/// even for nearly dependent inputs.
pub fn orthonormalize(vectors: &[EuclVec], rank_tol: f64) -> Result<(Vec<EuclVec>, usize)> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput("orthonormalize"));
    }
    if rank_tol <= 0.0 {
        return Err(Error::InvalidArgument("rank_tol must be positive".into()));
    }
    let dim = vectors[0].dim();
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    let max_norm = vectors.iter().map(EuclVec::norm).fold(0.0, f64::max);
    let cutoff = rank_tol * max_norm;

    let mut basis: Vec<EuclVec> = Vec::with_capacity(vectors.len().min(dim));
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = w.dot(q);
                w.axpy(q, -proj);
            }
        }
        let norm = w.norm();
        if norm > cutoff {
            basis.push(w.scaled(1.0 / norm));
        }
    }
    let rank = basis.len();
    Ok((basis, rank))
}

/// Like [`orthonormalize`] but also reports how far the prefix of successive
/// vectors stayed independent: the returned index is the first position whose
/// vector was dropped (or the input length if none were). Frenet construction
/// needs the prefix, not just the rank.
pub(crate) fn orthonormalize_prefix(
    vectors: &[EuclVec],
    rank_tol: f64,
) -> Result<(Vec<EuclVec>, Vec<f64>, usize)> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput("orthonormalize"));
    }
    let max_norm = vectors.iter().map(EuclVec::norm).fold(0.0, f64::max);
    let cutoff = rank_tol * max_norm;
    let mut basis = Vec::with_capacity(vectors.len());
    let mut diag = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for q in &basis {
            let proj = w.dot(q);
            w.axpy(q, -proj);
        }
        // second pass for orthogonality against rounding
        for q in &basis {
            let proj = w.dot(q);
            w.axpy(q, -proj);
        }
        let norm = w.norm();
        if norm <= cutoff {
            return Ok((basis, diag, k));
        }
        basis.push(w.scaled(1.0 / norm));
        diag.push(norm);
    }
    let n = vectors.len();
    Ok((basis, diag, n))
}

/// Fit the direction `d` and level `c` minimizing Σ (⟨v_i, d⟩ - c)² with
/// ‖d‖ = 1, via the smallest eigenvector of the augmented normal matrix built
/// from the stacked rows [v_i; -1].
pub fn fit_constant_direction(samples: &[EuclVec]) -> Result<DirectionFit> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("fit_constant_direction"));
    }
    let dim = samples[0].dim();
    if samples.len() < dim + 1 {
        return Err(Error::InsufficientSamples {
            needed: dim + 1,
            got: samples.len(),
        });
    }
    for v in samples {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }

    // Degenerate case: all samples identical.
    let spread = samples
        .iter()
        .map(|v| v.distance(&samples[0]))
        .fold(0.0, f64::max);
    if spread < 1e-14 {
        let d = samples[0].normalized()?;
        return Ok(DirectionFit {
            direction: d,
            level: 1.0,
            residual: 0.0,
        });
    }

    let m = dim + 1;
    let mut mat = DMatrix::<f64>::zeros(m, m);
    for v in samples {
        let mut w = DVector::<f64>::zeros(m);
        for i in 0..dim {
            w[i] = v[i];
        }
        w[dim] = -1.0;
        mat += &w * w.transpose();
    }
    let (_, eigvec) = smallest_eigenpair(&mat);

    let d_part = DVector::from_iterator(dim, eigvec.iter().take(dim).copied());
    let d_norm = d_part.norm();
    if d_norm < 1e-12 {
        return Err(Error::InvalidArgument(
            "direction fit degenerate: no direction component".into(),
        ));
    }
    let mut direction = EuclVec::from_dvector(&(d_part / d_norm));
    let mut level = eigvec[dim] / d_norm;

    // d and -d describe the same direction; report the representative with a
    // non-negative level, breaking exact ties by the first nonzero coordinate.
    if level < 0.0 {
        direction = -&direction;
        level = -level;
    } else if level.abs() < 1e-12 {
        if let Some(x) = direction.iter().find(|x| x.abs() > 1e-12) {
            if *x < 0.0 {
                direction = -&direction;
            }
        }
    }

    let residual = samples
        .iter()
        .map(|v| (v.dot(&direction) - level).abs())
        .fold(0.0, f64::max);

    Ok(DirectionFit {
        direction,
        level,
        residual,
    })
}

/// Smallest eigenvalue/eigenvector of a symmetric matrix.
pub(crate) fn smallest_eigenpair(mat: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = mat.clone().symmetric_eigen();
    let mut idx = 0;
    for (i, val) in eig.eigenvalues.iter().enumerate() {
        if *val < eig.eigenvalues[idx] {
            idx = i;
        }
    }
    (eig.eigenvalues[idx], eig.eigenvectors.column(idx).into())
}

/// Minimum-norm least-squares solution of a symmetric system `M x = y`,
/// dropping eigenvalues below `rel_tol * max |eigenvalue|`. Returns the
/// solution and the number of dropped dimensions.
pub(crate) fn solve_symmetric_min_norm(
    mat: &DMatrix<f64>,
    rhs: &DVector<f64>,
    rel_tol: f64,
) -> (DVector<f64>, usize) {
    let eig = mat.clone().symmetric_eigen();
    let max_ev = eig.eigenvalues.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let cutoff = rel_tol * max_ev;
    let mut x = DVector::zeros(rhs.len());
    let mut dropped = 0;
    for (i, ev) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        if ev.abs() > cutoff {
            x += v * (v.dot(rhs) / ev);
        } else {
            dropped += 1;
        }
    }
    (x, dropped)
}

/// Max off-diagonal deviation |⟨q_i, q_j⟩ - δ_ij| of a vector set.
pub fn orthonormality_residual(vectors: &[EuclVec]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.dot(b) - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(c: &[f64]) -> EuclVec {
        EuclVec::from_slice(c).unwrap()
    }

    #[test]
    fn orthonormalize_simple_pair() {
        let input = [v(&[1.0, 0.0, 0.0]), v(&[1.0, 1.0, 0.0])];
        let (q, rank) = orthonormalize(&input, 1e-8).unwrap();
        assert_eq!(rank, 2);
        assert_abs_diff_eq!(q[0].as_slice()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1].as_slice()[1], 1.0, epsilon = 1e-15);
        assert!(orthonormality_residual(&q) < 1e-15);
    }

    #[test]
    fn orthonormalize_drops_dependent_vector() {
        let input = [v(&[2.0, 0.0]), v(&[4.0, 0.0])];
        let (q, rank) = orthonormalize(&input, 1e-8).unwrap();
        assert_eq!(rank, 1);
        assert_abs_diff_eq!(q[0].as_slice()[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn orthonormalize_random_full_rank_matches_cgs2_oracle() {
        // oracle: twice-iterated classical Gram-Schmidt
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let input: Vec<EuclVec> = (0..5)
            .map(|_| v(&(0..5).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<_>>()))
            .collect();
        let (q, rank) = orthonormalize(&input, 1e-8).unwrap();
        assert_eq!(rank, 5);
        assert!(orthonormality_residual(&q) < 1e-12);

        let mut oracle: Vec<EuclVec> = Vec::new();
        for vec in &input {
            let mut w = vec.clone();
            for _pass in 0..2 {
                let mut corrected = w.clone();
                for q in &oracle {
                    corrected.axpy(q, -w.dot(q));
                }
                w = corrected;
            }
            oracle.push(w.normalized().unwrap());
        }
        for (a, b) in q.iter().zip(oracle.iter()) {
            assert!(a.distance(b) < 1e-9, "MGS and CGS2 should agree");
        }
    }

    #[test]
    fn orthonormalize_rejects_mixed_dimensions() {
        let input = [v(&[1.0, 0.0]), v(&[1.0, 0.0, 0.0])];
        assert!(orthonormalize(&input, 1e-8).is_err());
    }

    #[test]
    fn orthonormalize_is_projection_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let input: Vec<EuclVec> = (0..4)
            .map(|_| v(&(0..6).map(|_| rng.random_range(-2.0..2.0)).collect::<Vec<_>>()))
            .collect();
        let (q1, _) = orthonormalize(&input, 1e-10).unwrap();
        let (q2, _) = orthonormalize(&q1, 1e-10).unwrap();
        for (a, b) in q1.iter().zip(q2.iter()) {
            assert!(a.distance(b) < 1e-12);
        }
    }

    #[test]
    fn direction_fit_constant_input() {
        let samples = vec![EuclVec::basis(3, 2); 5];
        let fit = fit_constant_direction(&samples).unwrap();
        assert_abs_diff_eq!(fit.level, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fit.residual, 0.0, epsilon = 1e-15);
        assert!(fit.direction.distance(&EuclVec::basis(3, 2)) < 1e-15);
    }

    #[test]
    fn direction_fit_small_circle_normals() {
        // unit normals xi = beta x beta' of the latitude circle at phi = pi/4
        // satisfy <xi, e3> = sin(phi) exactly; verified at 100 points.
        let phi = std::f64::consts::FRAC_PI_4;
        let n = 100;
        let mut samples = Vec::with_capacity(n);
        for i in 0..n {
            let t = i as f64 * 0.05;
            let u = t / phi.sin();
            let beta = v(&[phi.sin() * u.cos(), phi.sin() * u.sin(), phi.cos()]);
            let dbeta = v(&[-u.sin(), u.cos(), 0.0]);
            samples.push(beta.cross(&dbeta));
        }
        let fit = fit_constant_direction(&samples).unwrap();
        assert!(
            fit.direction.distance(&EuclVec::basis(3, 2)) < 1e-9
                || fit.direction.distance(&(-&EuclVec::basis(3, 2))) < 1e-9
        );
        assert_abs_diff_eq!(fit.level.abs(), phi.sin(), epsilon = 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn direction_fit_exact_cone_slice_has_zero_residual() {
        // samples on the slice <v, d> = c of the unit sphere
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi: f64 = 0.6;
        let mut samples = Vec::new();
        for _ in 0..40 {
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            samples.push(v(&[
                phi.sin() * t.cos(),
                phi.sin() * t.sin(),
                phi.cos(),
            ]));
        }
        let fit = fit_constant_direction(&samples).unwrap();
        assert!(fit.residual < 1e-12);
        assert_abs_diff_eq!(fit.level, phi.cos(), epsilon = 1e-12);
    }

    #[test]
    fn direction_fit_needs_enough_samples() {
        let samples = vec![EuclVec::basis(4, 0); 3];
        assert!(matches!(
            fit_constant_direction(&samples),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn direction_fit_generic_normals_have_large_residual() {
        // principal normals of a generic twisted Fourier curve admit no
        // constant-angle direction; brute-force directions confirm.
        let n1 = |t: f64| {
            // normalized second derivative of a 2-mode Fourier curve
            let dd = v(&[
                -(t.cos()) - 1.2 * (2.0 * t).cos() * 4.0,
                -1.3 * t.sin() - 0.4 * (2.0 * t).sin() * 4.0,
                -0.8 * (t + 0.3).cos(),
            ]);
            dd.normalized().unwrap()
        };
        let samples: Vec<EuclVec> = (0..160).map(|i| n1(i as f64 * 0.039)).collect();
        let fit = fit_constant_direction(&samples).unwrap();
        assert!(fit.residual > 1e-2, "residual {}", fit.residual);

        // oracle: Fibonacci-sphere grid search over directions
        let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
        let mut best = f64::INFINITY;
        for k in 0..20_000 {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / 20_000.0;
            let r = (1.0 - z * z).sqrt();
            let th = golden * k as f64;
            let d = v(&[r * th.cos(), r * th.sin(), z]);
            let dots: Vec<f64> = samples.iter().map(|s| s.dot(&d)).collect();
            let mean = dots.iter().sum::<f64>() / dots.len() as f64;
            let dev = dots.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
            best = best.min(dev);
        }
        assert!(best > 1e-2, "grid search found a constant direction: {best}");
    }
}
