//! Curve representations: analytic families with exact jets, ingested sample
//! tables, arc-length reparameterization, and seeded random curves.

pub mod analytic;

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::linalg::EuclVec;
use crate::numeric::quad::cumulative_simpson;
use crate::numeric::spline::{CubicSpline, MonotoneHermite};
use crate::numeric::fd;
use crate::Result;

pub use analytic::{AnalyticCurve, ArcLengthReparam, FourierCurve};

/// Where a curve's derivative jets came from; downstream detectors pick their
/// tolerance off this flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JetSource {
    Analytic,
    FiniteDifference,
}

/// Raw ingested sample table: rows (t, point), strictly increasing in t.
#[derive(Debug, Clone)]
pub struct SampledTable {
    pub t: Vec<f64>,
    pub points: Vec<EuclVec>,
}

impl SampledTable {
    pub fn new(t: Vec<f64>, points: Vec<EuclVec>) -> Result<Self> {
        if t.len() != points.len() {
            return Err(Error::GridMismatch);
        }
        if t.len() < 7 {
            return Err(Error::InsufficientSamples {
                needed: 7,
                got: t.len(),
            });
        }
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        for w in t.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidArgument(
                    "table parameter must be strictly increasing".into(),
                ));
            }
        }
        let dim = points[0].dim();
        if dim < 2 {
            return Err(Error::InvalidArgument(
                "ambient dimension must be at least 2".into(),
            ));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(SampledTable { t, points })
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }
}

#[derive(Debug, Clone)]
pub enum CurveKind {
    Builtin(AnalyticCurve),
    Sampled(SampledTable),
}

/// A curve description: either a registered analytic family instance or an
/// ingested sample table.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    kind: CurveKind,
    domain_override: Option<(f64, f64)>,
}

impl CurveSpec {
    pub fn builtin(curve: AnalyticCurve) -> Self {
        CurveSpec {
            kind: CurveKind::Builtin(curve),
            domain_override: None,
        }
    }

    pub fn from_table(table: SampledTable) -> Self {
        CurveSpec {
            kind: CurveKind::Sampled(table),
            domain_override: None,
        }
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain_override = Some((lo, hi));
        self
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn analytic(&self) -> Option<&AnalyticCurve> {
        match &self.kind {
            CurveKind::Builtin(a) => Some(a),
            CurveKind::Sampled(_) => None,
        }
    }

    pub fn dimension(&self) -> usize {
        match &self.kind {
            CurveKind::Builtin(a) => a.dim(),
            CurveKind::Sampled(t) => t.dim(),
        }
    }

    pub fn default_domain(&self) -> (f64, f64) {
        if let Some(d) = self.domain_override {
            return d;
        }
        match &self.kind {
            CurveKind::Builtin(a) => a.default_domain(),
            CurveKind::Sampled(t) => (t.t[0], *t.t.last().unwrap()),
        }
    }

    /// Translate the whole curve by `offset`.
    pub fn translated(&self, offset: &EuclVec) -> Result<CurveSpec> {
        self.transformed(None, 1.0, offset)
    }

    /// offset + scale · R · curve, with R given as rows. Rectangular maps
    /// (more rows than the curve dimension) embed the curve into a larger
    /// ambient space; without rows the offset dimension must match.
    pub fn transformed(
        &self,
        rotation: Option<Vec<EuclVec>>,
        scale: f64,
        offset: &EuclVec,
    ) -> Result<CurveSpec> {
        let dim = self.dimension();
        match &rotation {
            Some(rows) => {
                if rows.len() != offset.dim() || rows.iter().any(|r| r.dim() != dim) {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: rows.first().map(EuclVec::dim).unwrap_or(0),
                    });
                }
            }
            None => {
                if offset.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: offset.dim(),
                    });
                }
            }
        }
        let kind = match &self.kind {
            CurveKind::Builtin(a) => CurveKind::Builtin(AnalyticCurve::Affine {
                inner: Box::new(a.clone()),
                rotation,
                scale,
                offset: offset.clone(),
            }),
            CurveKind::Sampled(t) => {
                let points = t
                    .points
                    .iter()
                    .map(|p| {
                        let rotated = match &rotation {
                            Some(rows) => EuclVec::from_vec_unchecked(
                                rows.iter().map(|r| r.dot(p)).collect(),
                            ),
                            None => p.clone(),
                        };
                        rotated.scaled(scale).add_scaled(offset, 1.0)
                    })
                    .collect();
                CurveKind::Sampled(SampledTable {
                    t: t.t.clone(),
                    points,
                })
            }
        };
        Ok(CurveSpec {
            kind,
            domain_override: self.domain_override,
        })
    }

    /// Analytic arc-length reparameterization over `domain`; the result is a
    /// unit-speed builtin curve with s = 0 at the domain start.
    pub fn reparameterized_by_arc_length(&self, domain: (f64, f64)) -> Result<CurveSpec> {
        match &self.kind {
            CurveKind::Builtin(a) => {
                let wrapper = ArcLengthReparam::new(a.clone(), domain.0, domain.1)?;
                Ok(CurveSpec::builtin(AnalyticCurve::ArcLength(wrapper)))
            }
            CurveKind::Sampled(_) => Err(Error::InvalidArgument(
                "analytic reparameterization needs a builtin curve; use \
                 sample_jets + reparameterize_arclength for tables"
                    .into(),
            )),
        }
    }
}

/// A curve sampled on a uniform parameter grid together with derivative jets.
///
/// After [`reparameterize_arclength`] the grid parameter is arc length and
/// `jets[i][0]` is the unit tangent.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    s: Vec<f64>,
    points: Vec<EuclVec>,
    /// jets[i][k] = d^{k+1} α / ds^{k+1} at sample i
    jets: Vec<Vec<EuclVec>>,
    jet_source: JetSource,
    provenance: Option<Arc<AnalyticCurve>>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn step(&self) -> f64 {
        self.s[1] - self.s[0]
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn points(&self) -> &[EuclVec] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &EuclVec {
        &self.points[i]
    }

    /// k-th derivative at sample i (k >= 1).
    pub fn jet(&self, i: usize, k: usize) -> &EuclVec {
        &self.jets[i][k - 1]
    }

    pub fn jet_order(&self) -> usize {
        self.jets[0].len()
    }

    pub fn jet_source(&self) -> JetSource {
        self.jet_source
    }

    pub fn provenance(&self) -> Option<&Arc<AnalyticCurve>> {
        self.provenance.as_ref()
    }

    /// max | |α'| − 1 | over the samples.
    pub fn unit_speed_deviation(&self) -> f64 {
        self.jets
            .iter()
            .map(|j| (j[0].norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn require_unit_speed(&self) -> Result<()> {
        let dev = self.unit_speed_deviation();
        if dev > crate::tolerances::TOL_UNIT_SPEED {
            return Err(Error::NotUnitSpeed { deviation: dev });
        }
        Ok(())
    }

    pub fn require_jets(&self, order: usize) -> Result<()> {
        if self.jet_order() < order {
            return Err(Error::JetOrderTooLow {
                needed: order,
                available: self.jet_order(),
            });
        }
        Ok(())
    }

    /// Evaluate position and derivatives at an off-grid parameter. Analytic
    /// provenance gives exact values; otherwise cubic Hermite interpolation of
    /// the stored jets (O(h^4), consistent with the RK4 integrators that call
    /// this for midpoints).
    pub fn eval_dense(&self, s: f64, order: usize) -> Vec<EuclVec> {
        debug_assert!(order <= self.jet_order());
        if let Some(a) = &self.provenance {
            return a.eval_jets(s, order);
        }
        let h = self.step();
        let s0 = self.s[0];
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.hermite_level(None, s0, h, s));
        for k in 1..=order {
            out.push(self.hermite_level(Some(k), s0, h, s));
        }
        out
    }

    /// Hermite-interpolate level k (None = position) using level k+1 as the
    /// derivative where available, else 4-point Lagrange.
    fn hermite_level(&self, level: Option<usize>, s0: f64, h: f64, s: f64) -> EuclVec {
        let n = self.len();
        let dim = self.dim();
        let idx = (((s - s0) / h).floor() as isize).clamp(0, n as isize - 2) as usize;
        let u = (s - (s0 + idx as f64 * h)) / h;
        let value = |i: usize| -> &EuclVec {
            match level {
                None => &self.points[i],
                Some(k) => &self.jets[i][k - 1],
            }
        };
        let deriv_level = match level {
            None => 1,
            Some(k) => k + 1,
        };
        if deriv_level <= self.jet_order() {
            let d0 = &self.jets[idx][deriv_level - 1];
            let d1 = &self.jets[idx + 1][deriv_level - 1];
            let (h00, h10, h01, h11) = (
                (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u),
                u * (1.0 - u) * (1.0 - u),
                u * u * (3.0 - 2.0 * u),
                u * u * (u - 1.0),
            );
            let mut v = value(idx).scaled(h00);
            v.axpy(d0, h10 * h);
            v.axpy(value(idx + 1), h01);
            v.axpy(d1, h11 * h);
            v
        } else {
            // top jet level: 4-point Lagrange on the stored values
            let i0 = (idx as isize - 1).clamp(0, n as isize - 4) as usize;
            let pos = (s - s0) / h;
            let mut acc = EuclVec::zeros(dim);
            for j in 0..4 {
                let xj = (i0 + j) as f64;
                let mut lj = 1.0;
                for k in 0..4 {
                    if k != j {
                        let xk = (i0 + k) as f64;
                        lj *= (pos - xk) / (xj - xk);
                    }
                }
                acc.axpy(value(i0 + j), lj);
            }
            acc
        }
    }

    /// Shift every point by `offset`; derivatives are unchanged. The result
    /// drops analytic provenance and falls back to Hermite interpolation for
    /// off-grid evaluation.
    pub fn translated(&self, offset: &EuclVec) -> Result<SampledCurve> {
        if offset.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: offset.dim(),
            });
        }
        Ok(SampledCurve {
            s: self.s.clone(),
            points: self
                .points
                .iter()
                .map(|p| p.add_scaled(offset, 1.0))
                .collect(),
            jets: self.jets.clone(),
            jet_source: self.jet_source,
            provenance: None,
        })
    }

    /// Assemble a sampled curve from raw parts (used by curve synthesis).
    pub(crate) fn from_parts(
        s: Vec<f64>,
        points: Vec<EuclVec>,
        jets: Vec<Vec<EuclVec>>,
        jet_source: JetSource,
    ) -> Self {
        SampledCurve {
            s,
            points,
            jets,
            jet_source,
            provenance: None,
        }
    }
}

fn min_count_for_order(order: usize) -> usize {
    match order {
        1 | 2 => 7,
        3 | 4 => 8,
        _ => 10,
    }
}

/// Sample a curve on `count` uniform nodes over `domain`, with derivative
/// jets up to `jet_order`. Builtin curves evaluate exactly; sample tables go
/// through a not-a-knot cubic spline with 4th-order finite-difference jets.
pub fn sample_jets(
    spec: &CurveSpec,
    domain: (f64, f64),
    count: usize,
    jet_order: usize,
) -> Result<SampledCurve> {
    if !(1..=5).contains(&jet_order) {
        return Err(Error::InvalidArgument(
            "jet_order must be between 1 and 5".into(),
        ));
    }
    let needed = min_count_for_order(jet_order);
    if count < needed.max(7) {
        return Err(Error::InsufficientSamples {
            needed: needed.max(7),
            got: count,
        });
    }
    let (lo, hi) = domain;
    let h = (hi - lo) / (count - 1) as f64;
    match &spec.kind {
        CurveKind::Builtin(a) => {
            a.check_domain(lo, hi)?;
            let mut points = Vec::with_capacity(count);
            let mut jets = Vec::with_capacity(count);
            let mut s = Vec::with_capacity(count);
            for i in 0..count {
                let t = lo + i as f64 * h;
                let all = a.eval_jets(t, jet_order);
                s.push(t);
                points.push(all[0].clone());
                jets.push(all[1..].to_vec());
            }
            Ok(SampledCurve {
                s,
                points,
                jets,
                jet_source: JetSource::Analytic,
                provenance: Some(Arc::new(a.clone())),
            })
        }
        CurveKind::Sampled(table) => {
            let (tlo, thi) = (table.t[0], *table.t.last().unwrap());
            if lo < tlo - 1e-12 || hi > thi + 1e-12 {
                return Err(Error::DomainOutOfRange {
                    lo,
                    hi,
                    valid_lo: tlo,
                    valid_hi: thi,
                });
            }
            let dim = table.dim();
            let mut columns = Vec::with_capacity(dim);
            for d in 0..dim {
                let y: Vec<f64> = table.points.iter().map(|p| p[d]).collect();
                columns.push(CubicSpline::fit_not_a_knot(&table.t, &y)?);
            }
            let mut s = Vec::with_capacity(count);
            let mut points = Vec::with_capacity(count);
            for i in 0..count {
                let t = lo + i as f64 * h;
                s.push(t);
                points.push(EuclVec::from_vec_unchecked(
                    columns.iter().map(|c| c.eval(t)).collect(),
                ));
            }
            let mut jets = vec![Vec::with_capacity(jet_order); count];
            for k in 1..=jet_order {
                let der = fd::derivative_uniform_vec(&points, h, k);
                for (i, d) in der.into_iter().enumerate() {
                    jets[i].push(d);
                }
            }
            Ok(SampledCurve {
                s,
                points,
                jets,
                jet_source: JetSource::FiniteDifference,
                provenance: None,
            })
        }
    }
}

/// Reparameterize a sampled curve by arc length: the output grid is uniform
/// in s (starting at 0), with ‖dα/ds‖ = 1. Analytic provenance gets the exact
/// chain-rule route; tabulated curves go through cumulative Simpson arc
/// length, a monotone inverse, and re-estimated finite-difference jets.
pub fn reparameterize_arclength(curve: &SampledCurve) -> Result<SampledCurve> {
    let n = curve.len();
    // regularity check with location of the first offender
    for i in 0..n {
        let v = curve.jets[i][0].norm();
        if v <= 1e-10 {
            return Err(Error::NonRegular {
                location: curve.s[i],
                speed: v,
            });
        }
    }

    if let Some(a) = &curve.provenance {
        if curve.unit_speed_deviation() <= 1e-12 && curve.s[0].abs() <= 1e-300 {
            return Ok(curve.clone());
        }
        let wrapper = ArcLengthReparam::new((**a).clone(), curve.s[0], *curve.s.last().unwrap())?;
        let total = wrapper.total_len();
        let spec = CurveSpec::builtin(AnalyticCurve::ArcLength(wrapper));
        return sample_jets(&spec, (0.0, total), n, curve.jet_order());
    }

    // tabulated route
    let h = curve.step();
    let speeds: Vec<f64> = curve.jets.iter().map(|j| j[0].norm()).collect();
    let cum = cumulative_simpson(&speeds, h);
    let total = *cum.last().unwrap();
    let slopes: Vec<f64> = speeds.iter().map(|v| 1.0 / v).collect();
    let inverse = MonotoneHermite::new(&cum, &curve.s, &slopes)?;

    let dim = curve.dim();
    let mut columns = Vec::with_capacity(dim);
    for d in 0..dim {
        let y: Vec<f64> = curve.points.iter().map(|p| p[d]).collect();
        columns.push(CubicSpline::fit_not_a_knot(&curve.s, &y)?);
    }

    let hs = total / (n - 1) as f64;
    let mut s_out = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        let sj = j as f64 * hs;
        let tj = inverse.eval(sj);
        s_out.push(sj);
        points.push(EuclVec::from_vec_unchecked(
            columns.iter().map(|c| c.eval(tj)).collect(),
        ));
    }
    let order = curve.jet_order();
    let mut jets = vec![Vec::with_capacity(order); n];
    for k in 1..=order {
        let der = fd::derivative_uniform_vec(&points, hs, k);
        for (i, d) in der.into_iter().enumerate() {
            jets[i].push(d);
        }
    }
    Ok(SampledCurve {
        s: s_out,
        points,
        jets,
        jet_source: JetSource::FiniteDifference,
        provenance: None,
    })
}

fn mix_seed(parts: &[u64]) -> u64 {
    // splitmix64 over the concatenated parts
    let mut state = 0x9E3779B97F4A7C15u64;
    for &p in parts {
        state = state.wrapping_add(p).wrapping_mul(0xBF58476D1CE4E5B9);
        state ^= state >> 31;
    }
    state
}

fn random_fourier_coeffs(
    n: usize,
    seed: u64,
    modes: usize,
    project: bool,
) -> FourierCurve {
    let tag = if project { 1 } else { 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[seed, n as u64, modes as u64, tag]));
    let constant: Vec<f64> = (0..n).map(|_| rng.random_range(-0.5..0.5)).collect();
    let mut cos_coeffs = vec![vec![0.0; modes]; n];
    let mut sin_coeffs = vec![vec![0.0; modes]; n];
    for i in 0..n {
        for k in 0..modes {
            let scale = 1.0 / (k + 1) as f64;
            cos_coeffs[i][k] = rng.random_range(-1.0..1.0) * scale;
            sin_coeffs[i][k] = rng.random_range(-1.0..1.0) * scale;
        }
    }
    FourierCurve {
        constant,
        cos_coeffs,
        sin_coeffs,
        frequency: 1.0,
        project_sphere: project,
    }
}


fn validate_regular(curve: &AnalyticCurve, check_norm: bool) -> Result<()> {
    let samples = 2048;
    for i in 0..samples {
        let t = i as f64 * std::f64::consts::TAU / samples as f64;
        let jets = curve.eval_jets(t, 1);
        if check_norm && (jets[0].norm() - 1.0).abs() > 1e-9 {
            return Err(Error::NonRegularSeed);
        }
        if jets[1].norm() < 1e-3 {
            return Err(Error::NonRegularSeed);
        }
    }
    // raw trig polynomial must stay clear of the origin for projection
    if let AnalyticCurve::Fourier(f) = curve {
        if f.project_sphere {
            let raw = FourierCurve {
                project_sphere: false,
                ..f.clone()
            };
            let raw = AnalyticCurve::Fourier(raw);
            for i in 0..samples {
                let t = i as f64 * std::f64::consts::TAU / samples as f64;
                if raw.eval_jets(t, 0)[0].norm() < 0.2 {
                    return Err(Error::NonRegularSeed);
                }
            }
        }
    }
    Ok(())
}

/// Deterministic random trigonometric-polynomial curve on the unit sphere
/// S^{n-1}(0,1), built by radial projection. Not unit speed; compose with
/// [`reparameterize_arclength`] or [`CurveSpec::reparameterized_by_arc_length`].
pub fn random_spherical_curve(n: usize, seed: u64, modes: usize) -> Result<CurveSpec> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if modes < 1 {
        return Err(Error::InvalidArgument("modes must be at least 1".into()));
    }
    let curve = AnalyticCurve::Fourier(random_fourier_coeffs(n, seed, modes, true));
    validate_regular(&curve, true)?;
    Ok(CurveSpec::builtin(curve))
}

/// Deterministic random trigonometric-polynomial curve in E^n (no projection).
pub fn random_fourier_curve(n: usize, seed: u64, modes: usize) -> Result<CurveSpec> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if modes < 1 {
        return Err(Error::InvalidArgument("modes must be at least 1".into()));
    }
    let curve = AnalyticCurve::Fourier(random_fourier_coeffs(n, seed, modes, false));
    validate_regular(&curve, false)?;
    Ok(CurveSpec::builtin(curve))
}

fn require_param(
    params: &BTreeMap<String, f64>,
    family: &str,
    key: &str,
) -> Result<f64> {
    params.get(key).copied().ok_or_else(|| Error::MissingParam {
        family: family.into(),
        param: key.into(),
    })
}

fn int_param(value: f64, key: &str, lo: usize, hi: usize) -> Result<usize> {
    if !value.is_finite() || value.fract() != 0.0 || value < lo as f64 || value > hi as f64 {
        return Err(Error::ParamOutOfRange {
            param: key.into(),
            message: format!("must be an integer in [{lo}, {hi}]"),
        });
    }
    Ok(value as usize)
}

fn positive(value: f64, key: &str) -> Result<f64> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::ParamOutOfRange {
            param: key.into(),
            message: "must be positive and finite".into(),
        });
    }
    Ok(value)
}

/// Instantiate a registered builtin family from a parameter map.
///
/// Families: `helix` (a, b), `plane_circle` (r; n), `small_circle_sphere`
/// (phi; n), `sec_cone_curve` (a; t0, phi, n), `fourier_spherical`
/// (seed; modes, n), `straight_line` (n). All families accept optional
/// `t_min` / `t_max` to override the default sampling domain.
pub fn make_builtin_curve(family: &str, params: &BTreeMap<String, f64>) -> Result<CurveSpec> {
    let allowed: &[&str] = match family {
        "helix" => &["a", "b"],
        "plane_circle" => &["r", "n"],
        "small_circle_sphere" => &["phi", "n"],
        "sec_cone_curve" => &["a", "t0", "phi", "n"],
        "fourier_spherical" => &["seed", "modes", "n"],
        "straight_line" => &["n"],
        other => return Err(Error::UnknownFamily(other.into())),
    };
    for key in params.keys() {
        if key == "t_min" || key == "t_max" {
            continue;
        }
        if !allowed.contains(&key.as_str()) {
            return Err(Error::UnknownParam {
                family: family.into(),
                param: key.clone(),
            });
        }
    }
    for key in params.keys() {
        if !params[key].is_finite() {
            return Err(Error::ParamOutOfRange {
                param: key.clone(),
                message: "must be finite".into(),
            });
        }
    }

    let curve = match family {
        "helix" => {
            let a = positive(require_param(params, family, "a")?, "a")?;
            let b = require_param(params, family, "b")?;
            AnalyticCurve::Helix { a, b }
        }
        "plane_circle" => {
            let r = positive(require_param(params, family, "r")?, "r")?;
            let n = int_param(params.get("n").copied().unwrap_or(2.0), "n", 2, 16)?;
            AnalyticCurve::PlaneCircle { radius: r, dim: n }
        }
        "small_circle_sphere" => {
            let phi = require_param(params, family, "phi")?;
            if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
                return Err(Error::ParamOutOfRange {
                    param: "phi".into(),
                    message: "must lie in (0, pi/2)".into(),
                });
            }
            let n = int_param(params.get("n").copied().unwrap_or(3.0), "n", 3, 16)?;
            AnalyticCurve::SmallCircleSphere { phi, dim: n }
        }
        "sec_cone_curve" => {
            let a = positive(require_param(params, family, "a")?, "a")?;
            let t0 = params.get("t0").copied().unwrap_or(0.0);
            let phi = params
                .get("phi")
                .copied()
                .unwrap_or(std::f64::consts::FRAC_PI_4);
            if !(phi > 0.0 && phi <= std::f64::consts::FRAC_PI_2) {
                return Err(Error::ParamOutOfRange {
                    param: "phi".into(),
                    message: "must lie in (0, pi/2]".into(),
                });
            }
            let n = int_param(params.get("n").copied().unwrap_or(3.0), "n", 3, 16)?;
            let profile = if (phi - std::f64::consts::FRAC_PI_2).abs() < 1e-15 {
                AnalyticCurve::PlaneCircle {
                    radius: 1.0,
                    dim: n,
                }
            } else {
                AnalyticCurve::SmallCircleSphere { phi, dim: n }
            };
            AnalyticCurve::SecScaled {
                profile: Box::new(profile),
                vertex: EuclVec::zeros(n),
                a,
                t0,
            }
        }
        "fourier_spherical" => {
            let seed = int_param(
                require_param(params, family, "seed")?,
                "seed",
                0,
                u32::MAX as usize,
            )? as u64;
            let modes = int_param(params.get("modes").copied().unwrap_or(2.0), "modes", 1, 8)?;
            let n = int_param(params.get("n").copied().unwrap_or(3.0), "n", 2, 8)?;
            return finish_domain(random_spherical_curve(n, seed, modes)?, params);
        }
        "straight_line" => {
            let n = int_param(params.get("n").copied().unwrap_or(3.0), "n", 2, 16)?;
            AnalyticCurve::StraightLine {
                point: EuclVec::zeros(n),
                dir: EuclVec::basis(n, 0),
            }
        }
        _ => unreachable!(),
    };
    finish_domain(CurveSpec::builtin(curve), params)
}

fn finish_domain(spec: CurveSpec, params: &BTreeMap<String, f64>) -> Result<CurveSpec> {
    match (params.get("t_min"), params.get("t_max")) {
        (None, None) => Ok(spec),
        (lo, hi) => {
            let d = spec.default_domain();
            let lo = lo.copied().unwrap_or(d.0);
            let hi = hi.copied().unwrap_or(d.1);
            if !(lo < hi) {
                return Err(Error::InvalidArgument(format!(
                    "invalid domain [{lo}, {hi}]"
                )));
            }
            if let Some(a) = spec.analytic() {
                a.check_domain(lo, hi)?;
            }
            Ok(spec.with_domain(lo, hi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn helix_spec() -> CurveSpec {
        CurveSpec::builtin(AnalyticCurve::Helix { a: 1.0, b: 1.0 })
    }

    #[test]
    fn builtin_plane_circle() {
        let mut params = BTreeMap::new();
        params.insert("r".to_string(), 2.0);
        params.insert("n".to_string(), 2.0);
        let spec = make_builtin_curve("plane_circle", &params).unwrap();
        assert_eq!(spec.dimension(), 2);
        let c = sample_jets(&spec, spec.default_domain(), 33, 2).unwrap();
        for p in c.points() {
            assert_abs_diff_eq!(p.norm(), 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn builtin_errors_name_the_offender() {
        let params = BTreeMap::new();
        match make_builtin_curve("helix", &params) {
            Err(Error::MissingParam { param, .. }) => assert_eq!(param, "a"),
            other => panic!("expected MissingParam, got {other:?}"),
        }
        match make_builtin_curve("nope", &params) {
            Err(Error::UnknownFamily(f)) => assert_eq!(f, "nope"),
            other => panic!("expected UnknownFamily, got {other:?}"),
        }
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), 1.0);
        params.insert("b".to_string(), 1.0);
        params.insert("wing".to_string(), 2.0);
        assert!(matches!(
            make_builtin_curve("helix", &params),
            Err(Error::UnknownParam { .. })
        ));
    }

    #[test]
    fn small_circle_constancy() {
        let mut params = BTreeMap::new();
        params.insert("phi".to_string(), std::f64::consts::FRAC_PI_4);
        let spec = make_builtin_curve("small_circle_sphere", &params).unwrap();
        let c = sample_jets(&spec, spec.default_domain(), 101, 1).unwrap();
        for (p, j) in c.points().iter().zip(0..) {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(
                p[2],
                std::f64::consts::FRAC_PI_4.cos(),
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(c.jet(j, 1).norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn straight_line_jet2_vanishes() {
        let mut params = BTreeMap::new();
        params.insert("n".to_string(), 4.0);
        let spec = make_builtin_curve("straight_line", &params).unwrap();
        let c = sample_jets(&spec, (0.0, 1.0), 21, 3).unwrap();
        for i in 0..c.len() {
            assert_eq!(c.jet(i, 2).norm(), 0.0);
            assert_eq!(c.jet(i, 3).norm(), 0.0);
        }
    }

    #[test]
    fn helix_total_arc_length() {
        let c = sample_jets(&helix_spec(), (0.0, std::f64::consts::TAU), 1001, 2).unwrap();
        let r = reparameterize_arclength(&c).unwrap();
        assert_abs_diff_eq!(
            *r.s().last().unwrap(),
            std::f64::consts::TAU * 2.0f64.sqrt(),
            epsilon = 1e-10
        );
        assert!(r.unit_speed_deviation() < 1e-9);
    }

    #[test]
    fn reparameterization_is_idempotent() {
        let c = sample_jets(&helix_spec(), (0.0, std::f64::consts::TAU), 501, 3).unwrap();
        let r1 = reparameterize_arclength(&c).unwrap();
        let r2 = reparameterize_arclength(&r1).unwrap();
        assert_eq!(r1.len(), r2.len());
        for i in 0..r1.len() {
            assert!(r1.point(i).distance(r2.point(i)) < 1e-12);
            assert!(r1.jet(i, 1).distance(r2.jet(i, 1)) < 1e-12);
        }
    }

    #[test]
    fn unit_speed_circle_passes_through() {
        // plane circle of radius 1 is already unit speed
        let spec = CurveSpec::builtin(AnalyticCurve::PlaneCircle {
            radius: 1.0,
            dim: 2,
        });
        let c = sample_jets(&spec, (0.0, 3.0), 301, 2).unwrap();
        let r = reparameterize_arclength(&c).unwrap();
        for i in 0..c.len() {
            assert!(c.point(i).distance(r.point(i)) < 1e-12);
        }
    }

    #[test]
    fn sec_cone_arclength_is_tangent() {
        // great-circle profile: s = a tan(t - t0) with s(t0) = 0
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), 1.0);
        params.insert("phi".to_string(), std::f64::consts::FRAC_PI_2);
        let spec = make_builtin_curve("sec_cone_curve", &params).unwrap();
        let c = sample_jets(&spec, (0.0, 0.8), 201, 2).unwrap();
        let r = reparameterize_arclength(&c).unwrap();
        // sample i sits at arc length s_i, parameter t with tan t = s_i
        for (i, &s) in r.s().iter().enumerate() {
            let t = s.atan();
            assert_abs_diff_eq!(r.point(i)[1], t.tan(), epsilon = 1e-9);
            assert_abs_diff_eq!(r.point(i)[0], 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn fd_jets_match_analytic_for_helix() {
        // ingest the helix as a bare table, then compare FD jets against
        // exact ones at h = 1e-3. Orders 1-2 sit at the 1e-6 level; order 3
        // divides few-ulp position noise by h^3 and is roundoff-limited near
        // 1e-5, still inside the finite-difference detector tolerance.
        let n = 1001;
        let h = 1e-3;
        let analytic = AnalyticCurve::Helix { a: 1.0, b: 1.0 };
        let t: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let points: Vec<EuclVec> = t.iter().map(|&ti| analytic.eval_jets(ti, 0)[0].clone()).collect();
        let table = SampledTable::new(t, points).unwrap();
        let spec = CurveSpec::from_table(table);
        let c = sample_jets(&spec, (0.0, 1.0), n, 3).unwrap();
        assert_eq!(c.jet_source(), JetSource::FiniteDifference);
        let mut worst = [0.0f64; 3];
        for i in 0..c.len() {
            let exact = analytic.eval_jets(c.s()[i], 3);
            for k in 1..=3 {
                worst[k - 1] = worst[k - 1].max(c.jet(i, k).distance(&exact[k]));
            }
        }
        assert!(worst[0] < 1e-6, "jet 1 deviation {}", worst[0]);
        assert!(worst[1] < 1e-6, "jet 2 deviation {}", worst[1]);
        assert!(worst[2] < 1e-4, "jet 3 deviation {}", worst[2]);
    }

    #[test]
    fn fd_jets_show_fourth_order_convergence() {
        // halving h cuts the jet-2 error by ~16x in the truncation regime
        let analytic = AnalyticCurve::Helix { a: 1.0, b: 1.0 };
        let err = |h: f64| -> f64 {
            let n = (4.0 / h) as usize + 1;
            let t: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
            let points: Vec<EuclVec> =
                t.iter().map(|&ti| analytic.eval_jets(ti, 0)[0].clone()).collect();
            let table = SampledTable::new(t, points).unwrap();
            let spec = CurveSpec::from_table(table);
            let c = sample_jets(&spec, (0.0, 4.0), n, 2).unwrap();
            let mut worst = 0.0f64;
            for i in 0..c.len() {
                let exact = analytic.eval_jets(c.s()[i], 2);
                worst = worst.max(c.jet(i, 2).distance(&exact[2]));
            }
            worst
        };
        let ratio = err(0.2) / err(0.1);
        assert!(ratio > 15.0, "expected order-4 convergence, ratio {ratio}");
    }

    #[test]
    fn arc_length_additivity() {
        let spec = helix_spec();
        let total = |lo: f64, hi: f64| -> f64 {
            let c = sample_jets(&spec, (lo, hi), 801, 2).unwrap();
            *reparameterize_arclength(&c).unwrap().s().last().unwrap()
        };
        let whole = total(0.0, 5.0);
        let split = total(0.0, 2.2) + total(2.2, 5.0);
        assert_abs_diff_eq!(whole, split, epsilon = 1e-10);
    }

    #[test]
    fn random_spherical_is_on_sphere_and_deterministic() {
        let spec = random_spherical_curve(3, 7, 2).unwrap();
        let c = sample_jets(&spec, (0.0, std::f64::consts::TAU), 257, 1).unwrap();
        for p in c.points() {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-12);
        }
        let again = random_spherical_curve(3, 7, 2).unwrap();
        let (a, b) = (spec.analytic().unwrap(), again.analytic().unwrap());
        match (a, b) {
            (AnalyticCurve::Fourier(fa), AnalyticCurve::Fourier(fb)) => {
                assert_eq!(fa, fb, "same seed must give bitwise-identical coefficients");
            }
            _ => panic!("expected Fourier curves"),
        }
    }

    #[test]
    fn random_spherical_e4_is_twisted_in_tangent_space() {
        use crate::linalg::orthonormalize;
        let spec = random_spherical_curve(4, 1, 3).unwrap();
        let c = sample_jets(&spec, (0.0, std::f64::consts::TAU), 101, 3).unwrap();
        for i in (0..c.len()).step_by(10) {
            let jets = [c.jet(i, 1).clone(), c.jet(i, 2).clone(), c.jet(i, 3).clone()];
            let (_, rank) = orthonormalize(&jets, 1e-8).unwrap();
            assert_eq!(rank, 3, "derivatives should span rank 3 at sample {i}");
        }
    }

    #[test]
    fn table_validation_rejects_bad_input() {
        let t = vec![0.0, 1.0, 2.0];
        let pts = vec![EuclVec::zeros(2); 3];
        assert!(matches!(
            SampledTable::new(t, pts),
            Err(Error::InsufficientSamples { .. })
        ));
        let t = vec![0.0, 1.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let pts = vec![EuclVec::zeros(2); 7];
        assert!(SampledTable::new(t, pts).is_err());
    }

    #[test]
    fn sec_domain_violation_reported() {
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), 1.0);
        let spec = make_builtin_curve("sec_cone_curve", &params).unwrap();
        let err = sample_jets(&spec, (-0.2, 1.6), 101, 2);
        assert!(matches!(err, Err(Error::SecantSingularity { .. })));
    }
}
