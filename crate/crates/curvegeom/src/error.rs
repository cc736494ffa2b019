//! Crate error type.

use thiserror::Error;

/// Everything that can go wrong when building or analyzing curves.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vector entries must be finite")]
    NonFiniteValue,

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("unknown curve family `{0}`")]
    UnknownFamily(String),

    #[error("family `{family}` is missing required parameter `{param}`")]
    MissingParam { family: String, param: String },

    #[error("family `{family}` does not accept parameter `{param}`")]
    UnknownParam { family: String, param: String },

    #[error("parameter `{param}` out of range: {message}")]
    ParamOutOfRange { param: String, message: String },

    #[error("domain crosses cone ruling asymptote (secant singularity near t = {singularity:.6})")]
    SecantSingularity { singularity: f64 },

    #[error("domain [{lo}, {hi}] outside the curve's valid range [{valid_lo}, {valid_hi}]")]
    DomainOutOfRange {
        lo: f64,
        hi: f64,
        valid_lo: f64,
        valid_hi: f64,
    },

    #[error("curve is not regular: |alpha'| = {speed:.3e} at parameter {location:.6}")]
    NonRegular { location: f64, speed: f64 },

    #[error("curve is not unit speed (max | |alpha'| - 1 | = {deviation:.3e}); reparameterize first")]
    NotUnitSpeed { deviation: f64 },

    #[error("projected curve non-regular for this seed; try a new seed")]
    NonRegularSeed,

    #[error("curve jets only go to order {available}, operation needs order {needed}")]
    JetOrderTooLow { needed: usize, available: usize },

    #[error("Frenet frame rank-deficient (rank {rank} at sample {sample})")]
    RankDeficient { sample: usize, rank: usize },

    #[error("principal normal undefined: curvature vanishes at sample {sample}")]
    CurvatureVanishes { sample: usize },

    #[error("torsion vanishes at sample {sample}")]
    TorsionVanishes { sample: usize },

    #[error("vertex undetermined: curvature vector vanishes identically")]
    VertexUndetermined,

    #[error("profile is not a unit-speed spherical curve (max deviation {deviation:.3e})")]
    ProfileNotSpherical { deviation: f64 },

    #[error("initial frame is not orthonormal / not orthogonal to the tangent (deviation {deviation:.3e})")]
    BadInitialFrame { deviation: f64 },

    #[error("sample grids do not match")]
    GridMismatch,

    #[error("grid must be uniform (relative step deviation {deviation:.3e})")]
    NonUniformGrid { deviation: f64 },

    #[error("tangential coordinate s + b vanishes on the grid; split the domain")]
    TangentialCoordinateVanishes,

    #[error("curve doubles back over profile (angular speed stalls at sample {sample})")]
    DoublesBack { sample: usize },

    #[error("csv parse error on line {line}: {message}")]
    CsvFormat { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
