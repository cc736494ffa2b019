//! Fixed-step classical Runge-Kutta for the small dense linear systems used
//! by frame transport, coordinate ODEs, and curve synthesis.

/// Integrate y' = f(s, y) from `s0` over `steps` uniform steps of size `h`.
///
/// Returns the state at every node (steps + 1 states). `post_step` runs after
/// each accepted step and may adjust the state in place (drift control such
/// as frame re-orthonormalization).
pub fn integrate<F, P>(
    y0: Vec<f64>,
    s0: f64,
    h: f64,
    steps: usize,
    f: F,
    mut post_step: P,
) -> Vec<Vec<f64>>
where
    F: Fn(f64, &[f64], &mut [f64]),
    P: FnMut(usize, &mut [f64]),
{
    let dim = y0.len();
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = y0;
    states.push(y.clone());

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for step in 0..steps {
        let s = s0 + step as f64 * h;
        f(s, &y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        f(s + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        f(s + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        f(s + h, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        post_step(step + 1, &mut y);
        states.push(y.clone());
    }
    states
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_decay() {
        let states = integrate(
            vec![1.0],
            0.0,
            0.01,
            200,
            |_, y, dy| dy[0] = -y[0],
            |_, _| {},
        );
        assert_abs_diff_eq!(states[200][0], (-2.0f64).exp(), epsilon = 1e-9);
    }

    #[test]
    fn circular_rotation_preserves_radius() {
        let states = integrate(
            vec![1.0, 0.0],
            0.0,
            0.005,
            2000,
            |_, y, dy| {
                dy[0] = -y[1];
                dy[1] = y[0];
            },
            |_, _| {},
        );
        let last = &states[2000];
        assert_abs_diff_eq!(last[0], (10.0f64).cos(), epsilon = 1e-9);
        assert_abs_diff_eq!(last[1], (10.0f64).sin(), epsilon = 1e-9);
    }
}
