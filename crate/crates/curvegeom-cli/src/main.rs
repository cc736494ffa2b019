//! Curve-analysis command line: detector reports, rectifying-curve and
//! cone-geodesic synthesis, curvature-profile transport, cone development,
//! and the named self-check suite.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curvegeom::cones::{
    circularity_check, cone_geodesic, geodesic_check_with_tol, make_cone, slant_helix_check,
    unroll_about_vertex, chord_deviation,
};
use curvegeom::correspondence::{
    curve_from_curvatures, measure_profile, rectifying_to_spherical,
    spherical_equation_residual_3d, spherical_to_rectifying_default, CurvatureProfile,
    ProfileSide,
};
use curvegeom::curve::{
    reparameterize_arclength, sample_jets, CurveSpec, JetSource, SampledCurve,
};
use curvegeom::frames::classify_rm_normal;
use curvegeom::io::{
    parse_builtin_spec, parse_curve_csv, parse_profile_csv, parse_vertex, write_curve_csv,
    write_profile_csv,
};
use curvegeom::linalg::EuclVec;
use curvegeom::rectify::{
    check_j_rectifying_with_tol, check_rectifying_with_tol, construct_rectifying, find_vertex,
};
use curvegeom::tolerances::{
    TOL_CLASSIFY, TOL_GEO_ANALYTIC, TOL_GEO_FD, TOL_RECT_ANALYTIC, TOL_RECT_FD, TOL_SLANT,
};
use curvegeom::verify::{run_all, VerifyConfig};
use curvegeom::Error;

/// Numerical analysis of curves in Euclidean n-space: Frenet frames,
/// rectifying curves, cone geodesics, slant helices, and the curvature
/// correspondence between spherical and rectifying curves.
#[derive(Parser)]
#[command(name = "curvegeom", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CurveSource {
    /// Builtin curve, e.g. helix:a=1,b=1 or plane_circle:r=2,n=3
    #[arg(long, conflicts_with = "csv")]
    builtin: Option<String>,
    /// Curve table CSV with header t,x0,x1,...
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct OutputDir {
    /// Directory for emitted files
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run every detector on a curve and write analysis.json + frenet.csv
    Analyze {
        #[command(flatten)]
        source: CurveSource,
        /// Vertex p as comma-separated coordinates; fitted when absent
        #[arg(long)]
        vertex: Option<String>,
        /// Restrict the j-rectifying scan to one index
        #[arg(long)]
        j: Option<usize>,
        /// Override the rectifying-detector tolerance
        #[arg(long)]
        tol_rect: Option<f64>,
        /// Override the geodesic-detector tolerance
        #[arg(long)]
        tol_geo: Option<f64>,
        #[command(flatten)]
        output: OutputDir,
    },
    /// Build the rectifying curve a sec(t − t0) β(t) over a spherical profile
    Construct {
        /// Profile curve (must be spherical; reparameterized if not unit speed)
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        /// Cone vertex; origin when absent
        #[arg(long)]
        vertex: Option<String>,
        /// Include first-derivative columns in the emitted CSV
        #[arg(long)]
        jets: bool,
        #[command(flatten)]
        output: OutputDir,
    },
    /// Build a cone geodesic and verify it both ways
    Geodesic {
        /// Profile curve for the cone
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        /// Cone vertex; origin when absent
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        jets: bool,
        #[command(flatten)]
        output: OutputDir,
    },
    /// Transport a curvature profile across the spherical ↔ rectifying map
    Map {
        #[command(flatten)]
        source: CurveSource,
        /// Curvature profile CSV (header s,kappa0,...) instead of a curve
        #[arg(long, conflicts_with_all = ["builtin", "csv"])]
        profile: Option<PathBuf>,
        /// Which side a --profile file describes
        #[arg(long, value_parser = ["spherical", "rectifying"])]
        side: Option<String>,
        /// Translation constant for the tangential coordinate
        #[arg(long)]
        b: Option<f64>,
        /// Vertex for the rectifying-side detector; fitted when absent
        #[arg(long)]
        vertex: Option<String>,
        #[command(flatten)]
        output: OutputDir,
    },
    /// Develop a curve on the 2-cone about a vertex into the plane
    Unroll {
        #[command(flatten)]
        source: CurveSource,
        /// Cone vertex; fitted from the curve when absent
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        jets: bool,
        #[command(flatten)]
        output: OutputDir,
    },
    /// Run the named self-check suite and write verify.json
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        tol_rect: Option<f64>,
        #[arg(long)]
        tol_geo: Option<f64>,
        #[command(flatten)]
        output: OutputDir,
    },
}

/// Exit codes: 0 success, 2 unreadable input, 3 non-regular curve, 1 other.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::CsvFormat { .. } => 2,
        Error::NonRegular { .. } | Error::NonRegularSeed => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze {
            source,
            vertex,
            j,
            tol_rect,
            tol_geo,
            output,
        } => cmd_analyze(source, vertex, j, tol_rect, tol_geo, output),
        Command::Construct {
            builtin,
            a,
            t0,
            vertex,
            jets,
            output,
        } => cmd_construct(builtin, a, t0, vertex, jets, output, false),
        Command::Geodesic {
            builtin,
            a,
            t0,
            vertex,
            jets,
            output,
        } => cmd_construct(builtin, a, t0, vertex, jets, output, true),
        Command::Map {
            source,
            profile,
            side,
            b,
            vertex,
            output,
        } => cmd_map(source, profile, side, b, vertex, output),
        Command::Unroll {
            source,
            vertex,
            jets,
            output,
        } => cmd_unroll(source, vertex, jets, output),
        Command::Verify {
            seed,
            tol_rect,
            tol_geo,
            output,
        } => return cmd_verify(seed, tol_rect, tol_geo, output),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn load_spec(source: &CurveSource) -> Result<(CurveSpec, String), Error> {
    match (&source.builtin, &source.csv) {
        (Some(spec), None) => Ok((parse_builtin_spec(spec)?, format!("builtin:{spec}"))),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let table = parse_curve_csv(&text)?;
            Ok((
                CurveSpec::from_table(table),
                format!("csv:{}", path.display()),
            ))
        }
        _ => Err(Error::InvalidArgument(
            "exactly one of --builtin or --csv is required".into(),
        )),
    }
}

fn parse_vertex_arg(arg: &Option<String>, dim: usize) -> Result<Option<EuclVec>, Error> {
    let Some(text) = arg else { return Ok(None) };
    let v = parse_vertex(text)?;
    if v.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    Ok(Some(v))
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_text(dir, name, &text)
}

/// Sample a spec over its default domain and reparameterize to unit speed.
fn unit_speed_curve(spec: &CurveSpec, count: usize) -> Result<SampledCurve, Error> {
    let jet_order = spec.dimension().min(5);
    let sampled = sample_jets(spec, spec.default_domain(), count, jet_order)?;
    reparameterize_arclength(&sampled)
}

fn cmd_analyze(
    source: CurveSource,
    vertex: Option<String>,
    j_filter: Option<usize>,
    tol_rect: Option<f64>,
    tol_geo: Option<f64>,
    output: OutputDir,
) -> Result<(), Error> {
    let (spec, source_name) = load_spec(&source)?;
    let n = spec.dimension();
    let curve = unit_speed_curve(&spec, 1201)?;
    let mut notes = Vec::new();

    let tol_rect = tol_rect.unwrap_or(match curve.jet_source() {
        JetSource::Analytic => TOL_RECT_ANALYTIC,
        JetSource::FiniteDifference => TOL_RECT_FD,
    });
    let tol_geo = tol_geo.unwrap_or(match curve.jet_source() {
        JetSource::Analytic => TOL_GEO_ANALYTIC,
        JetSource::FiniteDifference => TOL_GEO_FD,
    });

    let vertex_info = match parse_vertex_arg(&vertex, n)? {
        Some(v) => report::VertexInfo {
            coordinates: v,
            source: "given",
            fit_residual: None,
            rank_deficient: None,
        },
        None => match find_vertex(&curve) {
            Ok(fit) => report::VertexInfo {
                coordinates: fit.vertex,
                source: "fitted",
                fit_residual: Some(fit.residual),
                rank_deficient: Some(fit.rank_deficient),
            },
            Err(err) => {
                notes.push(format!("vertex fit: {err}; using the origin"));
                report::VertexInfo {
                    coordinates: EuclVec::zeros(n),
                    source: "fallback-origin",
                    fit_residual: None,
                    rank_deficient: None,
                }
            }
        },
    };
    let p = vertex_info.coordinates.clone();

    let frenet = report::frenet_summary(&curve, &mut notes);
    let rectifying = match check_rectifying_with_tol(&curve, &p, tol_rect) {
        Ok(r) => Some(r),
        Err(err) => {
            notes.push(format!("rectifying check: {err}"));
            None
        }
    };
    let mut j_rectifying = Vec::new();
    let js: Vec<usize> = match j_filter {
        Some(j) => vec![j],
        None => (0..n).collect(),
    };
    for j in js {
        match check_j_rectifying_with_tol(&curve, &p, j, tol_rect) {
            Ok(r) => j_rectifying.push(r),
            Err(err) => {
                notes.push(format!("j-rectifying (j = {j}): {err}"));
                break;
            }
        }
    }
    let geodesic = match geodesic_check_with_tol(&curve, &p, tol_geo) {
        Ok(g) => Some(g),
        Err(err) => {
            notes.push(format!("geodesic check: {err}"));
            None
        }
    };
    let slant_helix = match slant_helix_check(&curve) {
        Ok(fit) => Some(report::slant_report(fit, TOL_SLANT)),
        Err(err) => {
            notes.push(format!("slant helix check: {err}"));
            None
        }
    };
    let classification = match classify_rm_normal(&curve) {
        Ok(c) => Some(c),
        Err(err) => {
            notes.push(format!("classification: {err}"));
            None
        }
    };
    let equations = report::equations_for(&curve, &p, &mut notes);

    // frenet.csv carries the curvature functions when a frame exists
    if let Ok(profile) = measure_profile(&curve, ProfileSide::Rectifying, 0.0) {
        write_text(&output.out, "frenet.csv", &write_profile_csv(&profile))?;
    } else {
        notes.push("frenet.csv skipped: no full frame".into());
    }

    let analysis = report::AnalysisReport {
        curve: report::CurveMeta {
            source: source_name,
            dimension: n,
            samples: curve.len(),
            jet_source: curve.jet_source(),
            domain: [curve.s()[0], *curve.s().last().unwrap()],
            arc_length: curve.s().last().unwrap() - curve.s()[0],
            unit_speed_deviation: curve.unit_speed_deviation(),
        },
        vertex: vertex_info,
        frenet,
        rectifying,
        j_rectifying,
        geodesic,
        slant_helix,
        classification,
        equations,
        tolerances: report::Tolerances {
            rectifying: tol_rect,
            geodesic: tol_geo,
            slant: TOL_SLANT,
            classify: TOL_CLASSIFY,
        },
        notes,
    };
    write_json(&output.out, "analysis.json", &analysis)?;
    println!(
        "analysis.json written to {} ({} samples, dimension {})",
        output.out.display(),
        curve.len(),
        n
    );
    Ok(())
}

/// Shared body of `construct` and `geodesic`: both realize the secant curve,
/// the latter additionally frames it as a cone geodesic with cone reports.
fn cmd_construct(
    builtin: String,
    a: f64,
    t0: f64,
    vertex: Option<String>,
    jets: bool,
    output: OutputDir,
    as_geodesic: bool,
) -> Result<(), Error> {
    let profile = parse_builtin_spec(&builtin)?;
    let n = profile.dimension();
    let vertex = parse_vertex_arg(&vertex, n)?.unwrap_or_else(|| EuclVec::zeros(n));

    // profiles that are spherical but not unit speed get reparameterized
    let profile = match construct_rectifying(&profile, &vertex, a, t0) {
        Ok(_) => profile,
        Err(_) => profile.reparameterized_by_arc_length(profile.default_domain())?,
    };

    #[derive(serde::Serialize)]
    struct ConstructReport {
        profile: String,
        a: f64,
        t0: f64,
        rectifying: curvegeom::rectify::RectifyingReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        geodesic: Option<curvegeom::cones::GeodesicReport>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cone_circular_residual: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cone_planar: Option<bool>,
    }

    let (spec, mut geodesic, mut circ, mut planar) = if as_geodesic {
        let cone = make_cone(&vertex, profile.clone())?;
        let spec = {
            let d = curvegeom::curve::CurveSpec::builtin(
                curvegeom::curve::AnalyticCurve::SecScaled {
                    profile: Box::new(profile.analytic().unwrap().clone()),
                    vertex: vertex.clone(),
                    a,
                    t0,
                },
            );
            let (lo, hi) = d.default_domain();
            cone_geodesic(&cone, a, t0, (lo, hi))?
        };
        (
            spec,
            None,
            Some(circularity_check(&cone)?.residual),
            Some(cone.planar()),
        )
    } else {
        (construct_rectifying(&profile, &vertex, a, t0)?, None, None, None)
    };

    let curve = unit_speed_curve(&spec, 1001)?;
    let tol_rect = TOL_RECT_ANALYTIC;
    let rectifying = check_rectifying_with_tol(&curve, &vertex, tol_rect)?;
    if as_geodesic {
        geodesic = Some(geodesic_check_with_tol(&curve, &vertex, TOL_GEO_ANALYTIC)?);
    }

    let csv_name = if as_geodesic {
        "geodesic.csv"
    } else {
        "constructed.csv"
    };
    let json_name = if as_geodesic {
        "geodesic.json"
    } else {
        "construct.json"
    };
    write_text(&output.out, csv_name, &write_curve_csv(&curve, jets))?;
    let report = ConstructReport {
        profile: builtin,
        a,
        t0,
        rectifying,
        geodesic: geodesic.take(),
        cone_circular_residual: circ.take(),
        cone_planar: planar.take(),
    };
    write_json(&output.out, json_name, &report)?;
    println!(
        "{csv_name} and {json_name} written to {}",
        output.out.display()
    );
    Ok(())
}

fn cmd_map(
    source: CurveSource,
    profile_path: Option<PathBuf>,
    side: Option<String>,
    b_arg: Option<f64>,
    vertex: Option<String>,
    output: OutputDir,
) -> Result<(), Error> {
    #[derive(serde::Serialize)]
    struct MapReport {
        direction: &'static str,
        input_dimension: usize,
        output_dimension: usize,
        b: f64,
        kappa0_choice: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        synthesized_spherical_residual: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        synthesized_rectifying: Option<curvegeom::rectify::RectifyingReport>,
        notes: Vec<String>,
    }

    let mut notes = Vec::new();

    // input profile: from a profile CSV or measured off a curve
    let (input, direction): (CurvatureProfile, &'static str) = if let Some(path) = profile_path {
        let side = side.ok_or_else(|| {
            Error::InvalidArgument("--profile needs --side spherical|rectifying".into())
        })?;
        let side = match side.as_str() {
            "spherical" => ProfileSide::Spherical,
            _ => ProfileSide::Rectifying,
        };
        let text = fs::read_to_string(&path)?;
        let profile = parse_profile_csv(&text, side, b_arg.unwrap_or(0.0))?;
        let dir = match side {
            ProfileSide::Rectifying => "rectifying_to_spherical",
            ProfileSide::Spherical => "spherical_to_rectifying",
        };
        (profile, dir)
    } else {
        let (spec, _) = load_spec(&source)?;
        let curve = unit_speed_curve(&spec, 1501)?;
        let n = curve.dim();
        // a curve that passes the rectifying detector maps down; anything
        // else is treated as spherical-side data and maps up
        let p = match parse_vertex_arg(&vertex, n)? {
            Some(v) => v,
            None => match find_vertex(&curve) {
                Ok(fit) => fit.vertex,
                Err(_) => EuclVec::zeros(n),
            },
        };
        let rect = check_rectifying_with_tol(&curve, &p, TOL_RECT_ANALYTIC.max(1e-4))?;
        if rect.verdict && n >= 3 {
            notes.push(format!("curve detected as rectifying about {:?}", p.as_slice()));
            (
                measure_profile(&curve, ProfileSide::Rectifying, rect.b)?,
                "rectifying_to_spherical",
            )
        } else {
            notes.push("curve treated as spherical-side data".into());
            (
                measure_profile(&curve, ProfileSide::Spherical, 0.0)?,
                "spherical_to_rectifying",
            )
        }
    };

    let transported = match direction {
        "rectifying_to_spherical" => rectifying_to_spherical(&input)?,
        _ => match b_arg {
            Some(b) => curvegeom::correspondence::spherical_to_rectifying(
                &input,
                &vec![1.0; input.len()],
                b,
            )?,
            None => spherical_to_rectifying_default(&input)?,
        },
    };
    write_text(&output.out, "profile.csv", &write_profile_csv(&transported))?;

    // realize the transported data and run the opposite-side detector
    let frame: Vec<EuclVec> = (0..transported.dimension)
        .map(|i| EuclVec::basis(transported.dimension, i))
        .collect();
    let synthesized =
        curve_from_curvatures(&transported, &frame, &EuclVec::zeros(transported.dimension))?;
    write_text(
        &output.out,
        "synthesized.csv",
        &write_curve_csv(&synthesized, false),
    )?;

    let mut spherical_res = None;
    let mut rect_report = None;
    match direction {
        "rectifying_to_spherical" if transported.dimension == 3 => {
            match spherical_equation_residual_3d(&synthesized) {
                Ok((_, max)) => spherical_res = Some(max),
                Err(err) => notes.push(format!("spherical equation: {err}")),
            }
        }
        "spherical_to_rectifying" => match find_vertex(&synthesized) {
            Ok(fit) => {
                rect_report =
                    Some(check_rectifying_with_tol(&synthesized, &fit.vertex, 1e-4)?);
            }
            Err(err) => notes.push(format!("vertex fit on synthesized curve: {err}")),
        },
        _ => notes.push("opposite-side detector unavailable in this dimension".into()),
    }

    let report = MapReport {
        direction,
        input_dimension: input.dimension,
        output_dimension: transported.dimension,
        b: transported.b,
        kappa0_choice: "constant 1",
        synthesized_spherical_residual: spherical_res,
        synthesized_rectifying: rect_report,
        notes,
    };
    write_json(&output.out, "map.json", &report)?;
    println!(
        "profile.csv, synthesized.csv, map.json written to {}",
        output.out.display()
    );
    Ok(())
}

fn cmd_unroll(
    source: CurveSource,
    vertex: Option<String>,
    jets: bool,
    output: OutputDir,
) -> Result<(), Error> {
    let (spec, _) = load_spec(&source)?;
    let n = spec.dimension();
    let curve = unit_speed_curve(&spec, 1201)?;
    let p = match parse_vertex_arg(&vertex, n)? {
        Some(v) => v,
        None => find_vertex(&curve)?.vertex,
    };
    let flat = unroll_about_vertex(&p, &curve)?;
    write_text(&output.out, "unrolled.csv", &write_curve_csv(&flat, jets))?;

    #[derive(serde::Serialize)]
    struct UnrollReport {
        vertex: EuclVec,
        chord_deviation: f64,
        length_error: f64,
        geodesic: curvegeom::cones::GeodesicReport,
    }
    let speeds: Vec<f64> = (0..flat.len()).map(|i| flat.jet(i, 1).norm()).collect();
    let image_len: f64 = {
        // trapezoid is plenty: image speed equals input speed pointwise
        let h = flat.step();
        speeds.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum()
    };
    let input_len = curve.s().last().unwrap() - curve.s()[0];
    let geodesic = geodesic_check_with_tol(&curve, &p, TOL_GEO_ANALYTIC)?;
    let report = UnrollReport {
        vertex: p,
        chord_deviation: chord_deviation(flat.points()),
        length_error: (image_len - input_len).abs(),
        geodesic,
    };
    write_json(&output.out, "unroll.json", &report)?;
    println!(
        "unrolled.csv and unroll.json written to {}",
        output.out.display()
    );
    Ok(())
}

fn cmd_verify(
    seed: u64,
    tol_rect: Option<f64>,
    tol_geo: Option<f64>,
    output: OutputDir,
) -> ExitCode {
    let config = VerifyConfig {
        seed,
        tol_rect,
        tol_geo,
    };
    let outcome = run_all(&config);
    for check in &outcome.checks {
        println!(
            "[{}] {:<13} residual {:>10.3e}  tol {:>7.1e}  {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.residual,
            check.tolerance,
            check.detail
        );
    }
    println!(
        "{}: {}/{} checks passed (seed {seed})",
        if outcome.all_passed { "ok" } else { "FAILED" },
        outcome.checks.iter().filter(|c| c.passed).count(),
        outcome.checks.len()
    );

    #[derive(serde::Serialize)]
    struct VerifyReport<'a> {
        seed: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        tol_rect: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        tol_geo: Option<f64>,
        checks: &'a [curvegeom::verify::CheckResult],
        all_passed: bool,
        /// Wall-clock timings; the only nondeterministic field.
        timings_ms: &'a std::collections::BTreeMap<String, u64>,
    }
    let report = VerifyReport {
        seed,
        tol_rect,
        tol_geo,
        checks: &outcome.checks,
        all_passed: outcome.all_passed,
        timings_ms: &outcome.timings_ms,
    };
    if let Err(err) = write_json(&output.out, "verify.json", &report) {
        eprintln!("error: {err}");
        return ExitCode::from(2);
    }
    if outcome.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
