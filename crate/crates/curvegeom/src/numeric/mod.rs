//! Shared numerical machinery: Taylor-series jets, finite differences,
//! splines, quadrature, and a fixed-step RK4.

pub mod fd;
pub mod quad;
pub mod rk4;
pub mod series;
pub mod spline;
