//! Quadrature: Gauss-Legendre panels for analytic integrands and cumulative
//! Simpson sums for tabulated ones.

/// 5-point Gauss-Legendre nodes/weights on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906179845938663992797626878299,
    -0.538469310105683091036314420700,
    0.0,
    0.538469310105683091036314420700,
    0.906179845938663992797626878299,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236926885056189087514264040720,
    0.478628670499366468041291514836,
    0.568888888888888888888888888889,
    0.478628670499366468041291514836,
    0.236926885056189087514264040720,
];

/// 5-point Gauss-Legendre quadrature of `f` over [a, b].
pub fn gauss5<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Cumulative integral of uniformly-sampled values, 4th-order accurate at
/// every node: composite Simpson on even nodes, a 3-point quadratic rule for
/// the odd half-step.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 3);
    let mut s = vec![0.0; n];
    for i in (2..n).step_by(2) {
        s[i] = s[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
    }
    for i in (1..n).step_by(2) {
        if i + 1 < n {
            s[i] = s[i - 1] + h / 12.0 * (5.0 * values[i - 1] + 8.0 * values[i] - values[i + 1]);
        } else {
            s[i] = s[i - 1] + h / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i]);
        }
    }
    s
}
