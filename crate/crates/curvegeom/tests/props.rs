//! Property tests for the numeric invariants that should hold across the
//! whole input space, not just on hand-picked examples.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvegeom::correspondence::{
    rectifying_to_spherical, spherical_to_rectifying, CurvatureProfile, ProfileSide,
};
use curvegeom::curve::{
    reparameterize_arclength, sample_jets, AnalyticCurve, CurveSpec,
};
use curvegeom::io::{parse_builtin_spec, parse_curve_csv, parse_vertex, write_curve_csv};
use curvegeom::linalg::{fit_constant_direction, orthonormality_residual, orthonormalize, EuclVec};
use curvegeom::rectify::{check_rectifying, construct_rectifying, sample_unit_speed};

fn vec_of(dim: usize, coords: &[f64]) -> EuclVec {
    EuclVec::from_slice(&coords[..dim]).unwrap()
}

/// Seeded rotation rows, enough for generating slice samples in tests.
fn rotation_rows(seed: u64, n: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < n {
        let cand: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut v = cand.clone();
        for r in &rows {
            let dot: f64 = r.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
            for (vi, ri) in v.iter_mut().zip(r.iter()) {
                *vi -= dot * ri;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Gram-Schmidt output is orthonormal to 1e-12 and projection-idempotent.
    #[test]
    fn orthonormalize_invariants(
        dim in 2usize..6,
        count in 1usize..7,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let input: Vec<EuclVec> = (0..count)
            .map(|_| {
                EuclVec::from_slice(
                    &(0..dim).map(|_| rng.random_range(-3.0..3.0)).collect::<Vec<_>>(),
                )
                .unwrap()
            })
            .collect();
        let (q, rank) = orthonormalize(&input, 1e-10).unwrap();
        prop_assert!(rank <= dim.min(count));
        prop_assert!(orthonormality_residual(&q) < 1e-12);
        let (q2, rank2) = orthonormalize(&q, 1e-10).unwrap();
        prop_assert_eq!(rank, rank2);
        for (a, b) in q.iter().zip(q2.iter()) {
            prop_assert!(a.distance(b) < 1e-12);
        }
        // span preservation: every input lies in the span of the output
        for v in &input {
            let mut res = v.clone();
            for b in &q {
                res.axpy(b, -v.dot(b));
            }
            prop_assert!(res.norm() < 1e-8 * v.norm().max(1.0));
        }
    }

    /// Samples exactly on a sphere slice ⟨v, d⟩ = cos φ fit with ~zero
    /// residual, recovering the axis and level.
    #[test]
    fn direction_fit_exact_on_cone_slices(
        seed in any::<u64>(),
        phi in 0.2f64..1.3,
    ) {
        let rows = rotation_rows(seed, 3);
        let mut samples = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5555);
        for _ in 0..24 {
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let local = [phi.sin() * t.cos(), phi.sin() * t.sin(), phi.cos()];
            let coords: Vec<f64> = (0..3)
                .map(|i| (0..3).map(|j| rows[j][i] * local[j]).sum())
                .collect();
            samples.push(EuclVec::from_slice(&coords).unwrap());
        }
        let fit = fit_constant_direction(&samples).unwrap();
        prop_assert!(fit.residual < 1e-12, "residual {}", fit.residual);
        prop_assert!((fit.level - phi.cos()).abs() < 1e-10);
        let axis = vec_of(3, &rows[2]);
        let d = fit.direction.distance(&axis).min(fit.direction.distance(&(-&axis)));
        prop_assert!(d < 1e-9);
    }

    /// Arc-length reparameterization is idempotent and produces unit speed.
    #[test]
    fn reparameterization_idempotent(
        a in 0.5f64..2.0,
        b in -1.5f64..1.5,
        count in 201usize..400,
    ) {
        let spec = CurveSpec::builtin(AnalyticCurve::Helix { a, b });
        let c = sample_jets(&spec, (0.0, 4.0), count, 2).unwrap();
        let r1 = reparameterize_arclength(&c).unwrap();
        prop_assert!(r1.unit_speed_deviation() < 1e-9);
        let r2 = reparameterize_arclength(&r1).unwrap();
        for i in 0..r1.len() {
            prop_assert!(r1.point(i).distance(r2.point(i)) < 1e-9);
        }
    }

    /// Arc length is additive over domain splits.
    #[test]
    fn arc_length_additivity(split in 0.5f64..4.5) {
        let spec = CurveSpec::builtin(AnalyticCurve::Helix { a: 1.0, b: 0.7 });
        let total = |lo: f64, hi: f64| -> f64 {
            let c = sample_jets(&spec, (lo, hi), 401, 2).unwrap();
            *reparameterize_arclength(&c).unwrap().s().last().unwrap()
        };
        let whole = total(0.0, 5.0);
        let parts = total(0.0, split) + total(split, 5.0);
        prop_assert!((whole - parts).abs() < 1e-10, "gap {}", (whole - parts).abs());
    }

    /// check_rectifying residuals are translation covariant: moving the
    /// curve and the vertex together changes nothing beyond rounding.
    #[test]
    fn rectifying_translation_covariance(
        ox in -2.0f64..2.0,
        oy in -2.0f64..2.0,
        oz in -2.0f64..2.0,
    ) {
        let beta = CurveSpec::builtin(AnalyticCurve::SmallCircleSphere {
            phi: 0.9,
            dim: 3,
        });
        let vertex = EuclVec::zeros(3);
        let spec = construct_rectifying(&beta, &vertex, 1.2, 0.0).unwrap();
        let curve = sample_unit_speed(&spec, (-0.5, 0.6), 301, 2).unwrap();
        let base = check_rectifying(&curve, &vertex).unwrap();

        let offset = EuclVec::from_slice(&[ox, oy, oz]).unwrap();
        let moved = curve.translated(&offset).unwrap();
        let report = check_rectifying(&moved, &offset).unwrap();
        prop_assert!((report.cond1_residual - base.cond1_residual).abs() < 1e-10);
        prop_assert!((report.cond2_residual - base.cond2_residual).abs() < 1e-9);
        prop_assert!((report.cond4_residual - base.cond4_residual).abs() < 1e-10);
        prop_assert_eq!(report.verdict, base.verdict);
    }

    /// The two curvature transports invert each other to a couple of ulps on
    /// the grid (the copied rows bitwise).
    #[test]
    fn transport_round_trip(
        amp in 0.05f64..0.4,
        freq in 0.3f64..2.0,
        b in 0.0f64..1.0,
    ) {
        let n = 64;
        let s: Vec<f64> = (0..n).map(|i| 0.2 + i as f64 * 0.05).collect();
        let k0: Vec<f64> = s.iter().map(|x| 0.9 + amp * (freq * x).sin()).collect();
        let t: Vec<f64> = s.iter().map(|x| 0.4 + amp * (freq * x).cos()).collect();
        let profile = CurvatureProfile::new(
            3,
            s,
            vec![k0.clone(), t.clone()],
            ProfileSide::Spherical,
            0.0,
        )
        .unwrap();
        let rect = spherical_to_rectifying(&profile, &vec![1.0; n], b).unwrap();
        let back = rectifying_to_spherical(&rect).unwrap();
        for (a, e) in back.functions[0].iter().zip(k0.iter()) {
            prop_assert!((a - e).abs() <= 4.0 * f64::EPSILON * e.abs());
        }
        for (a, e) in back.functions[1].iter().zip(t.iter()) {
            prop_assert_eq!(a, e);
        }
    }

    /// Emitted curve CSV re-parses to bit-identical points.
    #[test]
    fn curve_csv_round_trip(
        a in 0.5f64..2.0,
        b in -1.0f64..1.0,
    ) {
        let spec = CurveSpec::builtin(AnalyticCurve::Helix { a, b });
        let curve = sample_jets(&spec, (0.0, 3.0), 41, 1).unwrap();
        let text = write_curve_csv(&curve, false);
        let table = parse_curve_csv(&text).unwrap();
        for (p, q) in table.points.iter().zip(curve.points().iter()) {
            prop_assert_eq!(p, q);
        }
    }

    /// The builtin-spec and vertex parsers never panic on arbitrary input.
    #[test]
    fn parsers_do_not_panic(input in ".{0,60}") {
        let _ = parse_builtin_spec(&input);
        let _ = parse_vertex(&input);
        let _ = parse_curve_csv(&input);
    }
}
