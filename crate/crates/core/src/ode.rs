//! Dormand–Prince 5(4) stepping with PI step-size control.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
        }
    }
}

/// Result of one trial step.
#[derive(Debug, Clone, Copy)]
pub struct TrialStep<const N: usize> {
    pub y: [f64; N],
    /// Derivative at the end of the step (first stage of the next step).
    pub f_end: [f64; N],
    /// Scaled max-norm error estimate; the step is acceptable when `<= 1`.
    pub err: f64,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combo<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (w, k) in terms {
            acc += w * k[i];
        }
        *o += h * acc;
    }
    out
}

/// One Dormand–Prince step of size `h` (may be negative) from `(t, y)` with
/// `f0 = f(t, y)` already known.
pub fn dopri5_step<const N: usize, E, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    f0: &[f64; N],
    h: f64,
    tol: Tolerances,
) -> Result<TrialStep<N>, E>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
{
    let k1 = *f0;
    let k2 = f(t + C2 * h, &combo(y, h, &[(A21, &k1)]))?;
    let k3 = f(t + C3 * h, &combo(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = f(
        t + C4 * h,
        &combo(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
    )?;
    let k5 = f(
        t + C5 * h,
        &combo(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = f(
        t + h,
        &combo(
            y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
    )?;
    let y_new = combo(
        y,
        h,
        &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    let k7 = f(t + h, &y_new)?;

    let mut err: f64 = 0.0;
    for i in 0..N {
        let e = h
            * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = tol.abs_tol + tol.rel_tol * y[i].abs().max(y_new[i].abs());
        err = err.max(e.abs() / scale);
    }
    Ok(TrialStep {
        y: y_new,
        f_end: k7,
        err,
    })
}

/// PI step-size controller.
#[derive(Debug, Clone)]
pub struct StepController {
    err_prev: f64,
    last_rejected: bool,
    pub safety: f64,
    pub min_factor: f64,
    pub max_factor: f64,
}

impl Default for StepController {
    fn default() -> Self {
        Self {
            err_prev: 1e-4,
            last_rejected: false,
            safety: 0.9,
            min_factor: 0.2,
            max_factor: 10.0,
        }
    }
}

impl StepController {
    /// Returns whether the step is accepted and the factor for the next step.
    pub fn judge(&mut self, err: f64) -> (bool, f64) {
        if !err.is_finite() {
            self.last_rejected = true;
            return (false, self.min_factor);
        }
        if err <= 1.0 {
            let e = err.max(1e-10);
            let mut fac = self.safety * e.powf(-0.17) * self.err_prev.powf(0.04);
            fac = fac.clamp(self.min_factor, self.max_factor);
            if self.last_rejected {
                fac = fac.min(1.0);
            }
            self.err_prev = err.max(1e-4);
            self.last_rejected = false;
            (true, fac)
        } else {
            self.last_rejected = true;
            let fac = (self.safety * err.powf(-0.2)).max(self.min_factor);
            (false, fac)
        }
    }
}

/// Cubic Hermite interpolation on `[t0, t1]` from end values and derivatives.
pub fn hermite_cubic<const N: usize>(
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    t1: f64,
    y1: &[f64; N],
    f1: &[f64; N],
    t: f64,
) -> [f64; N] {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    let h10 = s * (1.0 - s) * (1.0 - s);
    let h01 = s * s * (3.0 - 2.0 * s);
    let h11 = s * s * (s - 1.0);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
    out
}

/// One step of the linearly implicit, L-stable two-stage Rosenbrock method
/// ROS2 (`γ = 1 + 1/√2`) for an autonomous system. The Jacobian is formed by
/// forward differences; the method keeps second order for any Jacobian
/// approximation. The error estimate compares against the embedded
/// first-order solution.
pub fn ros2_step<const N: usize, E, F>(
    f: &mut F,
    y: &[f64; N],
    f0: &[f64; N],
    h: f64,
    tol: Tolerances,
) -> Result<TrialStep<N>, E>
where
    F: FnMut(&[f64; N]) -> Result<[f64; N], E>,
{
    let gamma = 1.0 + std::f64::consts::FRAC_1_SQRT_2;
    let mut m = [[0.0; N]; N];
    for j in 0..N {
        let delta = 1e-7 * y[j].abs().max(1.0);
        let mut yp = *y;
        yp[j] += delta;
        let fp = f(&yp)?;
        for i in 0..N {
            m[i][j] = -gamma * h * (fp[i] - f0[i]) / delta;
        }
        m[j][j] += 1.0;
    }
    let k1 = solve_linear(m, *f0);
    let mut y1 = *y;
    for i in 0..N {
        y1[i] += h * k1[i];
    }
    let f1 = f(&y1)?;
    let mut rhs = [0.0; N];
    for i in 0..N {
        rhs[i] = f1[i] - 2.0 * k1[i];
    }
    let k2 = solve_linear(m, rhs);
    let mut y_new = *y;
    let mut err: f64 = 0.0;
    for i in 0..N {
        y_new[i] += h * (1.5 * k1[i] + 0.5 * k2[i]);
    }
    for i in 0..N {
        let e = 0.5 * h * (k1[i] + k2[i]);
        let scale = tol.abs_tol + tol.rel_tol * y[i].abs().max(y_new[i].abs());
        err = err.max(e.abs() / scale);
    }
    let f_end = f(&y_new)?;
    Ok(TrialStep { y: y_new, f_end, err })
}

/// Dense Gaussian elimination with partial pivoting; singular pivots are
/// left as infinities for the caller's error estimate to reject.
fn solve_linear<const N: usize>(mut m: [[f64; N]; N], mut b: [f64; N]) -> [f64; N] {
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        m.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..N {
            let fct = m[r][col] / m[col][col];
            for k in col..N {
                m[r][k] -= fct * m[col][k];
            }
            b[r] -= fct * b[col];
        }
    }
    let mut x = [0.0; N];
    for r in (0..N).rev() {
        let mut acc = b[r];
        for k in r + 1..N {
            acc -= m[r][k] * x[k];
        }
        x[r] = acc / m[r][r];
    }
    x
}
