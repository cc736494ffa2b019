//! Finite-difference derivative estimation on uniform grids.
//!
//! Stencil weights come from Fornberg's recurrence, which handles centered and
//! one-sided node sets alike; interior points get symmetric windows, boundary
//! points one-sided ones of the same order.

use crate::linalg::EuclVec;

/// Fornberg weights: for nodes `x` and evaluation point `z`, returns
/// `w[k][j]` such that f^(k)(z) ≈ sum_j w[k][j] f(x[j]), for k = 0..=m.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Window width giving 4th-order accuracy for derivative `m` at interior points.
fn window(m: usize) -> usize {
    match m {
        1 | 2 => 5,
        3 | 4 => 7,
        _ => 9,
    }
}

/// Estimate the m-th derivative of `values` sampled on a uniform grid with
/// step `h`, at every grid point. 4th-order interior stencils; shifted
/// windows (one node wider) near the boundary.
pub fn derivative_uniform(values: &[f64], h: f64, m: usize) -> Vec<f64> {
    assert!(m >= 1 && m <= 5);
    let n = values.len();
    let w = window(m);
    let wb = (w + 1).min(n); // boundary window, one wider to keep 4th order
    assert!(n >= w, "grid too short for the requested derivative order");
    let half = w / 2;

    // interior weights depend only on the offsets; compute once
    let offsets: Vec<f64> = (0..w).map(|j| (j as f64 - half as f64) * h).collect();
    let interior = fd_weights(0.0, &offsets, m).swap_remove(m);

    let mut out = vec![0.0; n];
    for i in 0..n {
        if i >= half && i + half < n {
            let lo = i - half;
            let mut acc = 0.0;
            for j in 0..w {
                acc += interior[j] * values[lo + j];
            }
            out[i] = acc;
        } else {
            let lo = if i < half { 0 } else { n - wb };
            let nodes: Vec<f64> = (0..wb).map(|j| (lo + j) as f64 * h).collect();
            let wt = fd_weights(i as f64 * h, &nodes, m).swap_remove(m);
            let mut acc = 0.0;
            for j in 0..wb {
                acc += wt[j] * values[lo + j];
            }
            out[i] = acc;
        }
    }
    out
}

/// Per-coordinate [`derivative_uniform`] for a sequence of points.
pub fn derivative_uniform_vec(points: &[EuclVec], h: f64, m: usize) -> Vec<EuclVec> {
    let n = points.len();
    let dim = points[0].dim();
    let mut out = vec![vec![0.0; dim]; n];
    let mut column = vec![0.0; n];
    for d in 0..dim {
        for (i, p) in points.iter().enumerate() {
            column[i] = p[d];
        }
        let der = derivative_uniform(&column, h, m);
        for i in 0..n {
            out[i][d] = der[i];
        }
    }
    out.into_iter().map(EuclVec::from_vec_unchecked).collect()
}

/// 4-point Lagrange interpolation of grid data at an arbitrary point.
/// Used for ODE right-hand sides at RK4 midpoints; O(h^4) accurate.
pub fn interpolate_uniform(values: &[f64], s0: f64, h: f64, s: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 4);
    let pos = (s - s0) / h;
    let mut i0 = pos.floor() as isize - 1;
    i0 = i0.clamp(0, n as isize - 4);
    let i0 = i0 as usize;
    let mut acc = 0.0;
    for j in 0..4 {
        let xj = (i0 + j) as f64;
        let mut lj = 1.0;
        for k in 0..4 {
            if k != j {
                let xk = (i0 + k) as f64;
                lj *= (pos - xk) / (xj - xk);
            }
        }
        acc += lj * values[i0 + j];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weights_reproduce_classic_central_stencil() {
        // 5-point first derivative: (-f2 + 8f1 - 8f-1 + f-2) / 12h
        let nodes = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let w = fd_weights(0.0, &nodes, 1);
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w[1].iter().zip(expect.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn exact_on_polynomials() {
        // window sizes guarantee exactness for quartics up to m = 4
        let h = 0.1;
        let n = 30;
        let f: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 * h;
                1.0 + x - 2.0 * x.powi(2) + 0.5 * x.powi(3) + 0.25 * x.powi(4)
            })
            .collect();
        let d2 = derivative_uniform(&f, h, 2);
        for (i, v) in d2.iter().enumerate() {
            let x = i as f64 * h;
            assert_abs_diff_eq!(*v, -4.0 + 3.0 * x + 3.0 * x.powi(2), epsilon = 1e-9);
        }
    }

    #[test]
    fn fourth_order_convergence_on_sine() {
        let err = |h: f64| -> f64 {
            let n = (1.0 / h) as usize + 1;
            let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
            let d = derivative_uniform(&f, h, 1);
            d.iter()
                .enumerate()
                .map(|(i, v)| (v - (i as f64 * h).cos()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(0.02) / err(0.01);
        assert!(ratio > 12.0, "expected ~16x reduction, got {ratio}");
    }

    #[test]
    fn fifth_derivative_supported() {
        let h = 0.05;
        let n = 60;
        let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
        let d5 = derivative_uniform(&f, h, 5);
        for (i, v) in d5.iter().enumerate() {
            let x = i as f64 * h;
            assert_abs_diff_eq!(*v, x.cos(), epsilon = 1e-4);
        }
    }

    #[test]
    fn midpoint_interpolation_is_accurate() {
        let h = 0.01;
        let vals: Vec<f64> = (0..200).map(|i| (i as f64 * h).sin()).collect();
        for i in 0..40 {
            let s = 0.3 + i as f64 * 0.007;
            assert_abs_diff_eq!(
                interpolate_uniform(&vals, 0.0, h, s),
                s.sin(),
                epsilon = 1e-9
            );
        }
    }
}
