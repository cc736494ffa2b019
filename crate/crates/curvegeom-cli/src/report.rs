//! JSON report assembly for the analyze pipeline.
//!
//! Struct field order fixes the key order, so identical inputs produce
//! byte-identical files.

use serde::Serialize;

use curvegeom::cones::GeodesicReport;
use curvegeom::correspondence::{
    rectifying_equation_residual_3d, rectifying_equation_residual_4d,
    spherical_equation_residual_3d, Rectifying3dReport,
};
use curvegeom::curve::{JetSource, SampledCurve};
use curvegeom::frames::{frenet_apparatus, frenet_equation_residual, ClassificationResult};
use curvegeom::linalg::{DirectionFit, EuclVec};
use curvegeom::rectify::{JRectifyingReport, RectifyingReport};

#[derive(Serialize)]
pub struct CurveMeta {
    pub source: String,
    pub dimension: usize,
    pub samples: usize,
    pub jet_source: JetSource,
    pub domain: [f64; 2],
    pub arc_length: f64,
    pub unit_speed_deviation: f64,
}

#[derive(Serialize)]
pub struct VertexInfo {
    pub coordinates: EuclVec,
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_deficient: Option<bool>,
}

#[derive(Serialize)]
pub struct FrenetSummary {
    pub twisted: bool,
    pub completed: bool,
    pub min_rank: usize,
    pub curvature_mean: Vec<f64>,
    pub orthonormality_residual: f64,
    pub frenet_equation_residual: f64,
}

#[derive(Serialize)]
pub struct SlantReport {
    pub axis: EuclVec,
    pub level: f64,
    pub residual: f64,
    pub verdict: bool,
}

#[derive(Serialize, Default)]
pub struct Equations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rectifying_3d: Option<Rectifying3dReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spherical_3d_max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rectifying_4d_max_residual: Option<f64>,
}

#[derive(Serialize)]
pub struct Tolerances {
    pub rectifying: f64,
    pub geodesic: f64,
    pub slant: f64,
    pub classify: f64,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub curve: CurveMeta,
    pub vertex: VertexInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frenet: Option<FrenetSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rectifying: Option<RectifyingReport>,
    pub j_rectifying: Vec<JRectifyingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geodesic: Option<GeodesicReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slant_helix: Option<SlantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationResult>,
    pub equations: Equations,
    pub tolerances: Tolerances,
    /// Detectors that could not run on this curve, with the reason.
    pub notes: Vec<String>,
}

pub fn slant_report(fit: DirectionFit, tol: f64) -> SlantReport {
    SlantReport {
        verdict: fit.residual < tol,
        axis: fit.direction,
        level: fit.level,
        residual: fit.residual,
    }
}

pub fn frenet_summary(curve: &SampledCurve, notes: &mut Vec<String>) -> Option<FrenetSummary> {
    match frenet_apparatus(curve) {
        Ok(apparatus) => {
            let (ortho, frenet_res) = match apparatus.frame_field() {
                Ok(field) => (
                    field.max_orthonormality_residual(),
                    frenet_equation_residual(&apparatus).unwrap_or(f64::NAN),
                ),
                Err(err) => {
                    notes.push(format!("frenet frame: {err}"));
                    return None;
                }
            };
            let curvature_mean = apparatus
                .curvatures
                .iter()
                .map(|row| row.iter().sum::<f64>() / row.len() as f64)
                .collect();
            Some(FrenetSummary {
                twisted: apparatus.twisted,
                completed: apparatus.completed,
                min_rank: apparatus.min_rank,
                curvature_mean,
                orthonormality_residual: ortho,
                frenet_equation_residual: frenet_res,
            })
        }
        Err(err) => {
            notes.push(format!("frenet apparatus: {err}"));
            None
        }
    }
}

pub fn equations_for(
    curve: &SampledCurve,
    vertex: &EuclVec,
    notes: &mut Vec<String>,
) -> Equations {
    let mut eq = Equations::default();
    match curve.dim() {
        3 => {
            match rectifying_equation_residual_3d(curve, vertex) {
                Ok(report) => eq.rectifying_3d = Some(report),
                Err(err) => notes.push(format!("3d rectifying equation: {err}")),
            }
            match spherical_equation_residual_3d(curve) {
                Ok((_, max)) => eq.spherical_3d_max_residual = Some(max),
                Err(err) => notes.push(format!("3d spherical equation: {err}")),
            }
        }
        4 => match rectifying_equation_residual_4d(curve, vertex) {
            Ok((_, max)) => eq.rectifying_4d_max_residual = Some(max),
            Err(err) => notes.push(format!("4d rectifying equation: {err}")),
        },
        _ => {}
    }
    eq
}
