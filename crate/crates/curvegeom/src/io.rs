//! Text formats: the curve and curvature-profile CSV schemas, the builtin
//! curve spec string `family:key=val,...`, and vertex coordinate lists.
//!
//! Parsers are strict about schema (exact headers, consistent column counts,
//! finite decimal values) and report the offending line; they accept CRLF
//! input even though emission always uses LF. These entry points take
//! untrusted input and must never panic — they are the fuzz targets.

use std::collections::BTreeMap;

use crate::correspondence::{CurvatureProfile, ProfileSide};
use crate::curve::{make_builtin_curve, CurveSpec, SampledCurve, SampledTable};
use crate::error::Error;
use crate::linalg::EuclVec;
use crate::Result;

fn parse_finite(field: &str, line: usize) -> Result<f64> {
    let value: f64 = field.trim().parse().map_err(|_| Error::CsvFormat {
        line,
        message: format!("`{field}` is not a decimal number"),
    })?;
    if !value.is_finite() {
        return Err(Error::CsvFormat {
            line,
            message: format!("`{field}` is not finite"),
        });
    }
    Ok(value)
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Parse a curve table `t,x0,...,x{n-1}`.
pub fn parse_curve_csv(text: &str) -> Result<SampledTable> {
    let mut rows = lines(text);
    let (line, header) = rows.next().ok_or(Error::CsvFormat {
        line: 1,
        message: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    // `t` for raw parameter tables; `s` so freshly emitted arc-length curves
    // re-ingest without edits
    if cols.len() < 3 || (cols[0] != "t" && cols[0] != "s") {
        return Err(Error::CsvFormat {
            line,
            message: "header must be `t,x0,x1,...`".into(),
        });
    }
    let mut dim = cols.len() - 1;
    for (i, c) in cols[1..].iter().enumerate() {
        if *c != format!("x{i}") {
            dim = i;
            break;
        }
    }
    if dim < 2 {
        return Err(Error::CsvFormat {
            line,
            message: "need coordinate columns x0, x1, ...".into(),
        });
    }
    // trailing derivative columns from emitted files are tolerated (and
    // ignored) when they are exactly dx0..dx{n-1}
    let rest = &cols[1 + dim..];
    if !rest.is_empty() {
        if rest.len() != dim {
            return Err(Error::CsvFormat {
                line,
                message: format!("unexpected column `{}`", rest[0]),
            });
        }
        for (i, c) in rest.iter().enumerate() {
            if *c != format!("dx{i}") {
                return Err(Error::CsvFormat {
                    line,
                    message: format!("unexpected column `{c}`"),
                });
            }
        }
    }
    let fields_per_row = cols.len();

    let mut t = Vec::new();
    let mut points = Vec::new();
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != fields_per_row {
            return Err(Error::CsvFormat {
                line,
                message: format!("expected {fields_per_row} fields, got {}", fields.len()),
            });
        }
        t.push(parse_finite(fields[0], line)?);
        let mut coords = Vec::with_capacity(dim);
        for f in &fields[1..=dim] {
            coords.push(parse_finite(f, line)?);
        }
        // derivative columns still have to parse cleanly even though the
        // values are re-estimated downstream
        for f in &fields[1 + dim..] {
            parse_finite(f, line)?;
        }
        points.push(EuclVec::from_vec_unchecked(coords));
    }
    SampledTable::new(t, points)
}

/// Emit a sampled curve as `s,x0,...,x{n-1}` plus first-derivative columns
/// `dx0,...` when `include_jets` is set. LF line endings, shortest
/// round-trippable decimal notation.
pub fn write_curve_csv(curve: &SampledCurve, include_jets: bool) -> String {
    let dim = curve.dim();
    let mut out = String::from("s");
    for i in 0..dim {
        out.push_str(&format!(",x{i}"));
    }
    if include_jets {
        for i in 0..dim {
            out.push_str(&format!(",dx{i}"));
        }
    }
    out.push('\n');
    for i in 0..curve.len() {
        out.push_str(&format!("{}", curve.s()[i]));
        for x in curve.point(i).iter() {
            out.push_str(&format!(",{x}"));
        }
        if include_jets {
            for x in curve.jet(i, 1).iter() {
                out.push_str(&format!(",{x}"));
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a curvature profile `s,kappa0,...,kappa{n-2}` and tag it with the
/// given side and translation constant.
pub fn parse_profile_csv(text: &str, side: ProfileSide, b: f64) -> Result<CurvatureProfile> {
    let mut rows = lines(text);
    let (line, header) = rows.next().ok_or(Error::CsvFormat {
        line: 1,
        message: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 2 || cols[0] != "s" {
        return Err(Error::CsvFormat {
            line,
            message: "header must be `s,kappa0,...`".into(),
        });
    }
    for (i, c) in cols[1..].iter().enumerate() {
        if *c != format!("kappa{i}") {
            return Err(Error::CsvFormat {
                line,
                message: format!("column {} must be named `kappa{i}`, got `{c}`", i + 1),
            });
        }
    }
    let count = cols.len() - 1;
    let mut s = Vec::new();
    let mut functions = vec![Vec::new(); count];
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != count + 1 {
            return Err(Error::CsvFormat {
                line,
                message: format!("expected {} fields, got {}", count + 1, fields.len()),
            });
        }
        s.push(parse_finite(fields[0], line)?);
        for (k, f) in fields[1..].iter().enumerate() {
            functions[k].push(parse_finite(f, line)?);
        }
    }
    CurvatureProfile::new(count + 1, s, functions, side, b)
}

/// Emit a curvature profile as `s,kappa0,...`.
pub fn write_profile_csv(profile: &CurvatureProfile) -> String {
    let mut out = String::from("s");
    for i in 0..profile.functions.len() {
        out.push_str(&format!(",kappa{i}"));
    }
    out.push('\n');
    for i in 0..profile.len() {
        out.push_str(&format!("{}", profile.s[i]));
        for f in &profile.functions {
            out.push_str(&format!(",{}", f[i]));
        }
        out.push('\n');
    }
    out
}

/// Parse the shell-friendly builtin syntax `family:key=val,...`.
pub fn parse_builtin_spec(spec: &str) -> Result<CurveSpec> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f.trim(), Some(r)),
        None => (spec.trim(), None),
    };
    if family.is_empty() {
        return Err(Error::InvalidArgument("empty curve family".into()));
    }
    let mut params = BTreeMap::new();
    if let Some(rest) = rest {
        for item in rest.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::InvalidArgument(
                    "empty parameter entry in builtin spec".into(),
                ));
            }
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("parameter `{item}` is not key=value"))
            })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(Error::InvalidArgument("empty parameter name".into()));
            }
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("parameter `{key}` has a non-numeric value"))
            })?;
            if !value.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "parameter `{key}` must be finite"
                )));
            }
            if params.insert(key.to_string(), value).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "parameter `{key}` given twice"
                )));
            }
        }
    }
    make_builtin_curve(family, &params)
}

/// Parse a comma-separated coordinate list such as `0,0,1.5`.
pub fn parse_vertex(text: &str) -> Result<EuclVec> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() < 2 || fields.len() > 16 {
        return Err(Error::InvalidArgument(
            "vertex needs between 2 and 16 coordinates".into(),
        ));
    }
    let mut coords = Vec::with_capacity(fields.len());
    for f in fields {
        let v: f64 = f.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("vertex coordinate `{f}` is not a number"))
        })?;
        if !v.is_finite() {
            return Err(Error::InvalidArgument(
                "vertex coordinates must be finite".into(),
            ));
        }
        coords.push(v);
    }
    Ok(EuclVec::from_vec_unchecked(coords))
}
