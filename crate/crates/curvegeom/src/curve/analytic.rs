//! Analytic curve families with exact derivative jets.
//!
//! Every family evaluates through truncated Taylor series, so jets of any
//! order up to 5 come out at rounding accuracy even for composed expressions
//! (secant scalings, radial projections, arc-length reparameterizations).

use crate::error::Error;
use crate::linalg::EuclVec;
use crate::numeric::quad::gauss5;
use crate::numeric::series::Series;
use crate::tolerances::SEC_GUARD;
use crate::Result;

/// Trigonometric-polynomial curve, optionally projected radially onto the
/// unit sphere. Coordinate i is
/// `constant[i] + sum_k cos_coeffs[i][k-1] cos(k ω t) + sin_coeffs[i][k-1] sin(k ω t)`
/// with base frequency ω (period 2π/ω).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCurve {
    pub constant: Vec<f64>,
    pub cos_coeffs: Vec<Vec<f64>>,
    pub sin_coeffs: Vec<Vec<f64>>,
    pub frequency: f64,
    pub project_sphere: bool,
}

/// A curve in E^n with exact jets.
#[derive(Debug, Clone)]
pub enum AnalyticCurve {
    /// (a cos t, a sin t, b t) in E^3.
    Helix { a: f64, b: f64 },
    /// (r cos t, r sin t, 0, ..., 0).
    PlaneCircle { radius: f64, dim: usize },
    /// Latitude circle of S^{n-1}(0,1), unit speed, axis along the last
    /// coordinate: (sin φ cos(t/sin φ), sin φ sin(t/sin φ), 0, ..., 0, cos φ).
    SmallCircleSphere { phi: f64, dim: usize },
    /// point + t · dir.
    StraightLine { point: EuclVec, dir: EuclVec },
    Fourier(FourierCurve),
    /// vertex + a sec(t - t0) · profile(t); the cone-geodesic family.
    SecScaled {
        profile: Box<AnalyticCurve>,
        vertex: EuclVec,
        a: f64,
        t0: f64,
    },
    /// Unit-speed reparameterization of the inner curve.
    ArcLength(ArcLengthReparam),
    /// offset + scale · R · inner(t), with R given as rows; rows of the
    /// inner dimension may be fewer than rows count, which embeds the curve
    /// into a higher-dimensional space.
    Affine {
        inner: Box<AnalyticCurve>,
        rotation: Option<Vec<EuclVec>>,
        scale: f64,
        offset: EuclVec,
    },
}

impl AnalyticCurve {
    pub fn dim(&self) -> usize {
        match self {
            AnalyticCurve::Helix { .. } => 3,
            AnalyticCurve::PlaneCircle { dim, .. } => *dim,
            AnalyticCurve::SmallCircleSphere { dim, .. } => *dim,
            AnalyticCurve::StraightLine { point, .. } => point.dim(),
            AnalyticCurve::Fourier(f) => f.constant.len(),
            AnalyticCurve::SecScaled { profile, .. } => profile.dim(),
            AnalyticCurve::ArcLength(r) => r.inner.dim(),
            AnalyticCurve::Affine { offset, .. } => offset.dim(),
        }
    }

    /// Per-coordinate Taylor series around `t`, truncated at `order`.
    pub fn eval_series(&self, t: f64, order: usize) -> Vec<Series> {
        let len = order + 1;
        match self {
            AnalyticCurve::Helix { a, b } => {
                let (s, c) = Series::variable(t, len).sin_cos();
                vec![c.scale(*a), s.scale(*a), Series::variable(t, len).scale(*b)]
            }
            AnalyticCurve::PlaneCircle { radius, dim } => {
                let (s, c) = Series::variable(t, len).sin_cos();
                let mut out = vec![c.scale(*radius), s.scale(*radius)];
                out.resize(*dim, Series::constant(0.0, len));
                out
            }
            AnalyticCurve::SmallCircleSphere { phi, dim } => {
                let sp = phi.sin();
                let (s, c) = Series::variable(t, len).scale(1.0 / sp).sin_cos();
                let mut out = vec![c.scale(sp), s.scale(sp)];
                out.resize(dim - 1, Series::constant(0.0, len));
                out.push(Series::constant(phi.cos(), len));
                out
            }
            AnalyticCurve::StraightLine { point, dir } => (0..point.dim())
                .map(|i| {
                    let mut c = vec![0.0; len];
                    c[0] = point[i] + t * dir[i];
                    if len > 1 {
                        c[1] = dir[i];
                    }
                    Series::from_coeffs(c)
                })
                .collect(),
            AnalyticCurve::Fourier(f) => f.eval_series(t, len),
            AnalyticCurve::SecScaled {
                profile,
                vertex,
                a,
                t0,
            } => {
                let beta = profile.eval_series(t, order);
                let shifted = Series::from_coeffs({
                    let mut c = vec![0.0; len];
                    c[0] = t - t0;
                    if len > 1 {
                        c[1] = 1.0;
                    }
                    c
                });
                let (_, cos) = shifted.sin_cos();
                let u = cos.recip().scale(*a);
                beta.iter()
                    .enumerate()
                    .map(|(i, b)| u.mul(b).add_const(vertex[i]))
                    .collect()
            }
            AnalyticCurve::ArcLength(r) => r.eval_series(t, order),
            AnalyticCurve::Affine {
                inner,
                rotation,
                scale,
                offset,
            } => {
                let x = inner.eval_series(t, order);
                let n = self.dim();
                (0..n)
                    .map(|i| {
                        let mut acc = Series::constant(0.0, len);
                        match rotation {
                            Some(rows) => {
                                for (j, xj) in x.iter().enumerate() {
                                    acc = acc.add(&xj.scale(rows[i][j]));
                                }
                            }
                            None => acc = x[i].clone(),
                        }
                        acc.scale(*scale).add_const(offset[i])
                    })
                    .collect()
            }
        }
    }

    /// Position and derivatives [α, α', ..., α^(order)] at `t`.
    pub fn eval_jets(&self, t: f64, order: usize) -> Vec<EuclVec> {
        let series = self.eval_series(t, order);
        let dim = series.len();
        (0..=order)
            .map(|k| {
                let mut v = vec![0.0; dim];
                for (i, s) in series.iter().enumerate() {
                    v[i] = s.derivative(k);
                }
                EuclVec::from_vec_unchecked(v)
            })
            .collect()
    }

    /// |α'(t)|.
    pub fn speed(&self, t: f64) -> f64 {
        self.eval_jets(t, 1)[1].norm()
    }

    /// Parameter range on which the curve may be evaluated.
    pub fn valid_range(&self) -> (f64, f64) {
        match self {
            AnalyticCurve::SecScaled { profile, t0, .. } => {
                let (lo, hi) = profile.valid_range();
                let half = std::f64::consts::FRAC_PI_2 - SEC_GUARD;
                (lo.max(t0 - half), hi.min(t0 + half))
            }
            AnalyticCurve::ArcLength(r) => (0.0, r.total_len()),
            AnalyticCurve::Affine { inner, .. } => inner.valid_range(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Natural sampling window used when the caller does not give one.
    pub fn default_domain(&self) -> (f64, f64) {
        let tau = std::f64::consts::TAU;
        match self {
            AnalyticCurve::Helix { .. } | AnalyticCurve::PlaneCircle { .. } => (0.0, tau),
            AnalyticCurve::Fourier(f) => (0.0, tau / f.frequency),
            AnalyticCurve::SmallCircleSphere { phi, .. } => (0.0, tau * phi.sin()),
            AnalyticCurve::StraightLine { .. } => (0.0, 1.0),
            AnalyticCurve::SecScaled { t0, .. } => {
                let (vlo, vhi) = self.valid_range();
                ((t0 - 0.8).max(vlo + 1e-9), (t0 + 0.8).min(vhi - 1e-9))
            }
            AnalyticCurve::ArcLength(r) => (0.0, r.total_len()),
            AnalyticCurve::Affine { inner, .. } => inner.default_domain(),
        }
    }

    /// Validate a sampling domain against singularities and the valid range.
    pub fn check_domain(&self, lo: f64, hi: f64) -> Result<()> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "invalid domain [{lo}, {hi}]"
            )));
        }
        if let AnalyticCurve::SecScaled { t0, .. } = self {
            let half = std::f64::consts::FRAC_PI_2 - SEC_GUARD;
            if lo <= t0 - half || hi >= t0 + half {
                let singularity = if lo <= t0 - half {
                    t0 - std::f64::consts::FRAC_PI_2
                } else {
                    t0 + std::f64::consts::FRAC_PI_2
                };
                return Err(Error::SecantSingularity { singularity });
            }
        }
        let (vlo, vhi) = self.valid_range();
        if lo < vlo - 1e-12 || hi > vhi + 1e-12 {
            return Err(Error::DomainOutOfRange {
                lo,
                hi,
                valid_lo: vlo,
                valid_hi: vhi,
            });
        }
        match self {
            AnalyticCurve::SecScaled { profile, .. } => profile.check_domain(lo, hi),
            AnalyticCurve::Affine { inner, .. } => inner.check_domain(lo, hi),
            _ => Ok(()),
        }
    }
}

impl FourierCurve {
    fn eval_series(&self, t: f64, len: usize) -> Vec<Series> {
        let dim = self.constant.len();
        let modes = self.cos_coeffs[0].len();
        // sin/cos of k ω t shared across coordinates
        let mut trig = Vec::with_capacity(modes);
        for k in 1..=modes {
            let arg = Series::variable(t, len).scale(k as f64 * self.frequency);
            trig.push(arg.sin_cos());
        }
        let mut raw: Vec<Series> = (0..dim)
            .map(|i| {
                let mut acc = Series::constant(self.constant[i], len);
                for (k, (s, c)) in trig.iter().enumerate() {
                    acc = acc.add(&c.scale(self.cos_coeffs[i][k]));
                    acc = acc.add(&s.scale(self.sin_coeffs[i][k]));
                }
                acc
            })
            .collect();
        if self.project_sphere {
            let mut norm2 = Series::constant(0.0, len);
            for r in &raw {
                norm2 = norm2.add(&r.mul(r));
            }
            let norm = norm2.sqrt();
            raw = raw.iter().map(|r| r.div(&norm)).collect();
        }
        raw
    }
}

/// Unit-speed reparameterization of an analytic curve over a fixed window.
///
/// Generic curves carry a panel table of cumulative Gauss-Legendre arc length
/// inverted by bracketed Newton. Secant scalings of unit-speed spherical
/// profiles get the closed form s = a (tan(t − t0) − tan(t_lo − t0)) instead,
/// which removes all nested quadrature from cone-geodesic pipelines.
#[derive(Debug, Clone)]
pub struct ArcLengthReparam {
    inner: Box<AnalyticCurve>,
    map: ArcMap,
}

#[derive(Debug, Clone)]
enum ArcMap {
    Table {
        panel_t: Vec<f64>,
        panel_s: Vec<f64>,
    },
    Secant {
        a: f64,
        t0: f64,
        t_lo: f64,
        t_hi: f64,
        tan_lo: f64,
    },
}

const PANELS: usize = 256;

impl ArcLengthReparam {
    /// Wrap `inner` restricted to [t_lo, t_hi]; arc length 0 sits at t_lo.
    pub fn new(inner: AnalyticCurve, t_lo: f64, t_hi: f64) -> Result<Self> {
        inner.check_domain(t_lo, t_hi)?;
        if let AnalyticCurve::SecScaled { profile, a, t0, .. } = &inner {
            if profile_is_unit_spherical(profile, t_lo, t_hi) {
                let map = ArcMap::Secant {
                    a: *a,
                    t0: *t0,
                    t_lo,
                    t_hi,
                    tan_lo: (t_lo - t0).tan(),
                };
                return Ok(ArcLengthReparam {
                    inner: Box::new(inner),
                    map,
                });
            }
        }
        let mut panel_t = Vec::with_capacity(PANELS + 1);
        let mut panel_s = Vec::with_capacity(PANELS + 1);
        let h = (t_hi - t_lo) / PANELS as f64;
        let mut acc = 0.0;
        panel_t.push(t_lo);
        panel_s.push(0.0);
        for i in 0..PANELS {
            let a = t_lo + i as f64 * h;
            let b = a + h;
            // regularity probe at the panel midpoint
            let mid_speed = inner.speed(0.5 * (a + b));
            if mid_speed <= 1e-10 {
                return Err(Error::NonRegular {
                    location: 0.5 * (a + b),
                    speed: mid_speed,
                });
            }
            acc += gauss5(|t| inner.speed(t), a, b);
            panel_t.push(b);
            panel_s.push(acc);
        }
        Ok(ArcLengthReparam {
            inner: Box::new(inner),
            map: ArcMap::Table { panel_t, panel_s },
        })
    }

    pub fn inner(&self) -> &AnalyticCurve {
        &self.inner
    }

    pub fn total_len(&self) -> f64 {
        match &self.map {
            ArcMap::Table { panel_s, .. } => *panel_s.last().unwrap(),
            ArcMap::Secant {
                a,
                t0,
                t_hi,
                tan_lo,
                ..
            } => a * ((t_hi - t0).tan() - tan_lo),
        }
    }

    pub fn t_window(&self) -> (f64, f64) {
        match &self.map {
            ArcMap::Table { panel_t, .. } => (panel_t[0], *panel_t.last().unwrap()),
            ArcMap::Secant { t_lo, t_hi, .. } => (*t_lo, *t_hi),
        }
    }

    /// Arc length from the window start to parameter `t`.
    pub fn s_of_t(&self, t: f64) -> f64 {
        match &self.map {
            ArcMap::Table { panel_t, panel_s } => {
                let idx = match panel_t.partition_point(|&x| x <= t) {
                    0 => 0,
                    k if k > PANELS => PANELS - 1,
                    k => k - 1,
                };
                panel_s[idx] + gauss5(|u| self.inner.speed(u), panel_t[idx], t)
            }
            ArcMap::Secant { a, t0, tan_lo, .. } => a * ((t - t0).tan() - tan_lo),
        }
    }

    /// Inverse map: the parameter t with s_of_t(t) = s.
    pub fn t_of_s(&self, s: f64) -> f64 {
        let (panel_t, panel_s) = match &self.map {
            ArcMap::Secant { a, t0, tan_lo, .. } => {
                return t0 + (tan_lo + s / a).atan();
            }
            ArcMap::Table { panel_t, panel_s } => (panel_t, panel_s),
        };
        let idx = match panel_s.partition_point(|&x| x <= s) {
            0 => 0,
            k if k > PANELS => PANELS - 1,
            k => k - 1,
        };
        let (mut lo, mut hi) = (panel_t[idx], panel_t[idx + 1]);
        let mut t = lo
            + (hi - lo) * (s - panel_s[idx]).max(0.0)
                / (panel_s[idx + 1] - panel_s[idx]).max(1e-300);
        t = t.clamp(lo, hi);
        let s_scale = 1.0 + s.abs();
        for _ in 0..40 {
            let err = self.s_of_t(t) - s;
            // quadratic convergence bottoms out at evaluation noise; stop on
            // the arc-length residual, not the parameter step
            if err.abs() <= 1e-13 * s_scale {
                return t;
            }
            if err > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = err / self.inner.speed(t).max(1e-14);
            let next = t - step;
            let next = if next <= lo || next >= hi {
                0.5 * (lo + hi)
            } else {
                next
            };
            if (next - t).abs() <= 1e-14 * (1.0 + t.abs()) {
                return next;
            }
            t = next;
        }
        t
    }

    /// Series of the unit-speed curve in the arc-length variable around `s`:
    /// expand the inner curve at t(s), build the local arc-length series,
    /// revert it, and compose.
    fn eval_series(&self, s: f64, order: usize) -> Vec<Series> {
        let t = self.t_of_s(s);
        let inner = self.inner.eval_series(t, order);
        if order == 0 {
            return inner;
        }
        let len = order + 1;
        let mut speed2 = Series::constant(0.0, len - 1);
        for x in &inner {
            let dx = x.differentiate();
            speed2 = speed2.add(&dx.mul(&dx));
        }
        let speed = speed2.sqrt();
        let s_series = speed.integrate(0.0); // arc length relative to s, len = order+1
        let t_series = s_series.revert();
        inner.iter().map(|x| x.compose(&t_series)).collect()
    }
}

/// Cheap admissibility probe for the closed-form secant arc length: the
/// profile must be unit speed on the unit sphere.
fn profile_is_unit_spherical(profile: &AnalyticCurve, t_lo: f64, t_hi: f64) -> bool {
    let samples = 64;
    for i in 0..=samples {
        let t = t_lo + (t_hi - t_lo) * i as f64 / samples as f64;
        let jets = profile.eval_jets(t, 1);
        if (jets[0].norm() - 1.0).abs() > 1e-8 || (jets[1].norm() - 1.0).abs() > 1e-8 {
            return false;
        }
    }
    true
}
