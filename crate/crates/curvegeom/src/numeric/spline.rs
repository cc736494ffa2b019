//! Cubic interpolation: not-a-knot splines for table ingestion and monotone
//! Hermite interpolation for inverting arc-length maps.

use crate::error::Error;
use crate::Result;

/// C^2 cubic spline with not-a-knot end conditions.
///
/// Not-a-knot keeps the third derivative continuous across the second and
/// second-to-last knots, which matters because torsion extraction needs three
/// usable derivatives of ingested tables.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn fit_not_a_knot(x: &[f64], y: &[f64]) -> Result<CubicSpline> {
        let n = x.len();
        if n != y.len() {
            return Err(Error::GridMismatch);
        }
        if n < 4 {
            return Err(Error::InsufficientSamples { needed: 4, got: n });
        }
        for w in x.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidArgument(
                    "spline abscissae must be strictly increasing".into(),
                ));
            }
        }

        // Solve for knot second derivatives M_i. Interior rows are the usual
        // tridiagonal continuity equations; the not-a-knot rows tie M_0, M_1,
        // M_2 (and the mirrored triple) to a common third derivative.
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut a = vec![0.0; n]; // sub
        let mut b = vec![0.0; n]; // diag
        let mut c = vec![0.0; n]; // super
        let mut d = vec![0.0; n]; // rhs
        for i in 1..n - 1 {
            a[i] = h[i - 1];
            b[i] = 2.0 * (h[i - 1] + h[i]);
            c[i] = h[i];
            d[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        // not-a-knot: h1*M0 - (h0+h1)*M1 + h0*M2 = 0 and mirrored.
        // Fold M2 out of the first row using row 1, likewise at the other end,
        // to keep the system tridiagonal.
        {
            let (h0, h1) = (h[0], h[1]);
            // M0 = ((h0+h1)M1 - h0*M2)/h1; substitute into row 1:
            // row1: h0*M0 + 2(h0+h1)M1 + h1*M2 = d1
            let f = h0 / h1;
            b[1] += f * (h0 + h1);
            c[1] -= f * h0;
            a[1] = 0.0;
        }
        {
            let (hl, hm) = (h[n - 2], h[n - 3]);
            let f = hl / hm;
            b[n - 2] += f * (hl + hm);
            a[n - 2] -= f * hl;
            c[n - 2] = 0.0;
        }
        // Thomas on rows 1..n-2
        let mut m = vec![0.0; n];
        let len = n - 2;
        let mut cp = vec![0.0; len];
        let mut dp = vec![0.0; len];
        cp[0] = c[1] / b[1];
        dp[0] = d[1] / b[1];
        for i in 1..len {
            let row = i + 1;
            let denom = b[row] - a[row] * cp[i - 1];
            cp[i] = c[row] / denom;
            dp[i] = (d[row] - a[row] * dp[i - 1]) / denom;
        }
        m[n - 2] = dp[len - 1];
        for i in (0..len - 1).rev() {
            m[i + 1] = dp[i] - cp[i] * m[i + 2];
        }
        m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
        m[n - 1] = ((h[n - 2] + h[n - 3]) * m[n - 2] - h[n - 2] * m[n - 3]) / h[n - 3];

        Ok(CubicSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = t - self.x[i];
        let v = self.x[i + 1] - t;
        (self.m[i] * v.powi(3) + self.m[i + 1] * u.powi(3)) / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * v
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0) * u
    }

    #[allow(dead_code)]
    pub fn eval_deriv(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = t - self.x[i];
        let v = self.x[i + 1] - t;
        (-self.m[i] * v.powi(2) + self.m[i + 1] * u.powi(2)) / (2.0 * h)
            + (self.y[i + 1] - self.y[i]) / h
            - (self.m[i + 1] - self.m[i]) * h / 6.0
    }

}

/// Monotone cubic Hermite interpolant with caller-supplied slopes, limited
/// Fritsch-Carlson style so the interpolant never overshoots between knots.
#[derive(Debug, Clone)]
pub struct MonotoneHermite {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneHermite {
    pub fn new(x: &[f64], y: &[f64], slopes: &[f64]) -> Result<MonotoneHermite> {
        let n = x.len();
        if y.len() != n || slopes.len() != n {
            return Err(Error::GridMismatch);
        }
        if n < 2 {
            return Err(Error::InsufficientSamples { needed: 2, got: n });
        }
        let mut d = slopes.to_vec();
        for i in 0..n - 1 {
            let delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
            if delta == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
                continue;
            }
            // limit |d/delta| <= 3 on both ends of the interval
            for k in [i, i + 1] {
                let r = d[k] / delta;
                if r < 0.0 {
                    d[k] = 0.0;
                } else if r > 3.0 {
                    d[k] = 3.0 * delta;
                }
            }
        }
        Ok(MonotoneHermite {
            x: x.to_vec(),
            y: y.to_vec(),
            d,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let i = match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let u = (t - self.x[i]) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u),
            u * (1.0 - u) * (1.0 - u),
            u * u * (3.0 - 2.0 * u),
            u * u * (u - 1.0),
        );
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reproduces_cubics_exactly() {
        let x: Vec<f64> = (0..12).map(|i| i as f64 * 0.37).collect();
        let f = |t: f64| 2.0 - t + 0.5 * t * t - 0.125 * t * t * t;
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let sp = CubicSpline::fit_not_a_knot(&x, &y).unwrap();
        for i in 0..110 {
            let t = i as f64 * 0.04;
            assert_abs_diff_eq!(sp.eval(t), f(t), epsilon = 1e-11);
            assert_abs_diff_eq!(
                sp.eval_deriv(t),
                -1.0 + t - 0.375 * t * t,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn interpolates_sine_to_h4() {
        let n = 101;
        let h = 0.02;
        let x: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let y: Vec<f64> = x.iter().map(|&t| t.sin()).collect();
        let sp = CubicSpline::fit_not_a_knot(&x, &y).unwrap();
        for i in 0..200 {
            let t = 0.005 + i as f64 * 0.0099;
            assert_abs_diff_eq!(sp.eval(t), t.sin(), epsilon = 1e-8);
        }
    }

    #[test]
    fn monotone_hermite_inverts_monotone_data() {
        // y = tan(x) on a safe window, slopes exact
        let n = 201;
        let x: Vec<f64> = (0..n).map(|i| -1.0 + i as f64 * (2.0 / (n - 1) as f64)).collect();
        let y: Vec<f64> = x.iter().map(|&t| t.tan()).collect();
        let d: Vec<f64> = x.iter().map(|&t| 1.0 / t.cos().powi(2)).collect();
        let h = MonotoneHermite::new(&x, &y, &d).unwrap();
        for i in 0..100 {
            let t = -0.98 + i as f64 * 0.0196;
            assert_abs_diff_eq!(h.eval(t), t.tan(), epsilon = 1e-7);
        }
    }
}
