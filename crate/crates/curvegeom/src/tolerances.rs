//! Central tolerance constants.
//!
//! Detector verdicts compare a measured residual against one of these. The
//! split between the `ANALYTIC` and `FD` values follows the jet source: exact
//! jets keep residuals near rounding level, while 4th-order finite-difference
//! jets carry O(h^4) truncation plus roundoff amplified by 1/h^k.

/// Orthonormality required of `linalg::orthonormalize` output.
pub const TOL_ORTHONORMAL: f64 = 1e-12;

/// Orthonormality required of frame fields along a curve.
pub const TOL_FRAME_ORTHONORMAL: f64 = 1e-8;

/// Rectifying-condition residuals, analytic jets.
pub const TOL_RECT_ANALYTIC: f64 = 1e-6;
/// Rectifying-condition residuals, finite-difference jets.
pub const TOL_RECT_FD: f64 = 1e-4;

/// Cone-geodesic normality residuals, analytic jets.
pub const TOL_GEO_ANALYTIC: f64 = 1e-6;
/// Cone-geodesic normality residuals, finite-difference jets.
pub const TOL_GEO_FD: f64 = 1e-4;

/// Discrete Frenet-equation residual, analytic jets.
pub const TOL_FRENET_ANALYTIC: f64 = 1e-6;
/// Discrete Frenet-equation residual, finite-difference jets.
pub const TOL_FRENET_FD: f64 = 1e-4;

/// Constant-angle (circularity) verdicts on cone profiles.
pub const TOL_CIRCULAR: f64 = 1e-6;

/// Slant-helix verdicts on principal-normal samples.
pub const TOL_SLANT: f64 = 1e-6;

/// Hyperplane/sphere classification residual.
pub const TOL_CLASSIFY: f64 = 1e-6;

/// Rotation-minimizing condition: norm of the normal part of V'.
pub const TOL_RM: f64 = 1e-8;

/// Residuals of the 3d/4d curvature-torsion characteristic equations.
/// Two stacked finite-difference layers widen the tolerance.
pub const TOL_EQUATION: f64 = 1e-4;

/// Guard band around the secant singularities t0 ± pi/2 of cone geodesics.
pub const SEC_GUARD: f64 = 1e-3;

/// Relative rank tolerance for Gram-Schmidt on analytic jets.
pub const RANK_TOL_ANALYTIC: f64 = 1e-9;
/// Relative rank tolerance for Gram-Schmidt on finite-difference jets.
pub const RANK_TOL_FD: f64 = 1e-5;

/// Max allowed | |alpha'| - 1 | for a curve to count as unit speed.
pub const TOL_UNIT_SPEED: f64 = 1e-6;
