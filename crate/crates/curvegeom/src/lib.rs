//! Numerical differential geometry of curves in Euclidean n-space.
//!
//! The crate analyzes and synthesizes regular curves in `E^n` (2 ≤ n ≤ 5 for
//! full Frenet machinery, any n for second-order detectors):
//!
//! * [`linalg`] — dimension-generic vectors, Gram–Schmidt with numerical rank,
//!   and constant-direction fitting.
//! * [`curve`] — analytic curve families with exact derivative jets, CSV-table
//!   ingestion, arc-length reparameterization, and seeded random curves.
//! * [`frames`] — Frenet apparatus, rotation-minimizing frames, coordinate
//!   functions and their linear ODE, and the hyperplane/sphere classifier.
//! * [`rectify`] — detection and construction of rectifying and j-rectifying
//!   curves, plus vertex recovery.
//! * [`cones`] — cones over spherical profiles, their geodesics, flat
//!   development, circularity, and slant-helix analysis.
//! * [`correspondence`] — curvature-profile transport between spherical and
//!   rectifying curves, curve synthesis from curvatures, and the 3d/4d
//!   characteristic-equation residuals.
//! * [`verify`] — the named self-check suite driven by `curvegeom verify`.
//!
//! All computations are pure; every public type is freely shareable across
//! threads.

pub mod cones;
pub mod correspondence;
pub mod curve;
pub mod error;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod rectify;
pub mod tolerances;
pub mod verify;

mod numeric;

pub use error::Error;
pub use linalg::EuclVec;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
