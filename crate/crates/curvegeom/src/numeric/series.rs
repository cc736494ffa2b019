//! Truncated Taylor series arithmetic.
//!
//! A `Series` holds coefficients c_0..c_K of an expansion around some base
//! point; derivative k of the underlying function is k! * c_k. Everything the
//! analytic curve families need (products, quotients, sqrt, trig, arc-length
//! reversion) is closed under these operations, which is what makes exact
//! jets of expressions like `a sec(t) * beta(t) / |beta(t)|` possible without
//! hand-derived 5th derivatives.

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    c: Vec<f64>,
}

impl Series {
    /// Series of the constant function `x`.
    pub fn constant(x: f64, len: usize) -> Self {
        assert!(len >= 1);
        let mut c = vec![0.0; len];
        c[0] = x;
        Series { c }
    }

    /// Series of the identity variable evaluated at `x`: x + (t - x).
    pub fn variable(x: f64, len: usize) -> Self {
        assert!(len >= 1);
        let mut c = vec![0.0; len];
        c[0] = x;
        if len > 1 {
            c[1] = 1.0;
        }
        Series { c }
    }

    pub fn from_coeffs(c: Vec<f64>) -> Self {
        assert!(!c.is_empty());
        Series { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c.get(k).copied().unwrap_or(0.0)
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative of the underlying function at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 1..=k {
            fact *= i as f64;
        }
        fact * self.coeff(k)
    }

    pub fn add(&self, other: &Series) -> Series {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: f64) -> Series {
        Series {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add_const(&self, k: f64) -> Series {
        let mut out = self.clone();
        out.c[0] += k;
        out
    }

    /// Cauchy product truncated to the shorter length.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.c.len().min(other.c.len());
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * other.c[k - j];
            }
            *ck = acc;
        }
        Series { c }
    }

    /// Quotient self / other; requires other(0) != 0.
    pub fn div(&self, other: &Series) -> Series {
        let n = self.c.len().min(other.c.len());
        let b0 = other.c[0];
        debug_assert!(b0 != 0.0, "series division by zero constant term");
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= other.c[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Series { c: q }
    }

    pub fn recip(&self) -> Series {
        Series::constant(1.0, self.c.len()).div(self)
    }

    /// Square root; requires self(0) > 0.
    pub fn sqrt(&self) -> Series {
        let n = self.c.len();
        let mut r = vec![0.0; n];
        r[0] = self.c[0].sqrt();
        debug_assert!(r[0] > 0.0, "series sqrt of non-positive constant term");
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / (2.0 * r[0]);
        }
        Series { c: r }
    }

    /// Simultaneous sine and cosine of a series argument, by the standard
    /// joint recurrence k s_k = sum_j j a_j c_{k-j}, k c_k = -sum_j j a_j s_{k-j}.
    pub fn sin_cos(&self) -> (Series, Series) {
        let n = self.c.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..n {
            let mut sa = 0.0;
            let mut ca = 0.0;
            for j in 1..=k {
                let ja = j as f64 * self.c[j];
                sa += ja * c[k - j];
                ca -= ja * s[k - j];
            }
            s[k] = sa / k as f64;
            c[k] = ca / k as f64;
        }
        (Series { c: s }, Series { c })
    }

    /// Term-by-term derivative (one coefficient shorter).
    pub fn differentiate(&self) -> Series {
        let n = self.c.len();
        if n == 1 {
            return Series::constant(0.0, 1);
        }
        let mut c = vec![0.0; n - 1];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (k + 1) as f64 * self.c[k + 1];
        }
        Series { c }
    }

    /// Antiderivative with constant term `c0` (one coefficient longer).
    pub fn integrate(&self, c0: f64) -> Series {
        let n = self.c.len();
        let mut c = vec![0.0; n + 1];
        c[0] = c0;
        for k in 0..n {
            c[k + 1] = self.c[k] / (k + 1) as f64;
        }
        Series { c }
    }

    /// Composition self(g) for g with zero constant term, by Horner over series.
    pub fn compose(&self, g: &Series) -> Series {
        debug_assert!(
            g.c[0] == 0.0,
            "series composition needs zero constant inner term"
        );
        let n = self.c.len().min(g.c.len());
        let mut acc = Series::constant(self.c[n - 1], n);
        for k in (0..n - 1).rev() {
            acc = acc.mul(g).add_const(self.c[k]);
        }
        acc
    }

    /// Compositional inverse: for s with s(0) = 0 and s'(0) != 0, returns the
    /// series t with s(t(x)) = x. Newton iteration on series doubles the
    /// number of correct coefficients per step.
    pub fn revert(&self) -> Series {
        let n = self.c.len();
        debug_assert!(self.c[0] == 0.0, "reversion needs zero constant term");
        debug_assert!(self.c[1] != 0.0, "reversion needs nonzero linear term");
        let ds = self.differentiate();
        let identity = Series::variable(0.0, n);
        let mut t = Series::from_coeffs({
            let mut c = vec![0.0; n];
            c[1] = 1.0 / self.c[1];
            c
        });
        // ceil(log2(n)) + 1 Newton steps are plenty for n <= 8
        let steps = (usize::BITS - n.leading_zeros()) as usize + 1;
        for _ in 0..steps {
            let err = self.compose(&t).sub(&identity);
            // pad derivative composition back to full length
            let mut dcomp = ds.compose(&t.truncated(n - 1));
            dcomp.c.resize(n, 0.0);
            t = t.sub(&err.div(&dcomp));
            t.c[0] = 0.0;
        }
        t
    }

    fn truncated(&self, len: usize) -> Series {
        Series {
            c: self.c[..len.min(self.c.len())].to_vec(),
        }
    }

    fn zip(&self, other: &Series, f: impl Fn(f64, f64) -> f64) -> Series {
        let n = self.c.len().min(other.c.len());
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = f(self.c[k], other.c[k]);
        }
        Series { c }
    }
}
