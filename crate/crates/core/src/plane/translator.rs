//! Translating curves (cycloids) and the tilted cycloid product surfaces.
//!
//! The unit-speed translator with velocity `(0, 1)` is the cycloid
//! `(1/4)(t - sin t, 1 - cos t)`; its tangential angle is `θ = π/2 - t/2`
//! and `-1/κ = cos θ`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Result, SolitonError};
use crate::geometry::{CurveSample, PlaneCurve, Vec2};
use crate::ode::{dopri5_step, StepController, Tolerances};

/// Radius of the circle generating the unit-speed translating cycloid.
pub const CYCLOID_RADIUS: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycloidPoint {
    pub point: Vec2,
    pub theta: f64,
    pub kappa: f64,
}

pub fn cycloid_point(t: f64) -> Vec2 {
    CYCLOID_RADIUS * Vec2::new(t - t.sin(), 1.0 - t.cos())
}

fn is_cusp(t: f64) -> bool {
    let k = (t / TAU).round();
    (t - k * TAU).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0)
}

/// Point, tangential angle and curvature at patch parameter `t`.
pub fn cycloid_translator(t: f64) -> Result<CycloidPoint> {
    if is_cusp(t) {
        return Err(SolitonError::CuspPoint { t });
    }
    let half = 0.5 * t;
    let sh = half.sin();
    // tangent (sin t/2, cos t/2) up to the sign of sin t/2
    let theta = if sh > 0.0 { FRAC_PI_2 - half } else { FRAC_PI_2 - half + PI };
    Ok(CycloidPoint {
        point: cycloid_point(t),
        theta,
        kappa: -1.0 / sh.abs(),
    })
}

/// Samples one open arch on `t ∈ [t_min, t_max] ⊂ (0, 2π)`.
pub fn sample_cycloid(t_min: f64, t_max: f64, n_samples: usize) -> Result<PlaneCurve> {
    if !(t_min > 0.0 && t_max < TAU && t_min < t_max) {
        return Err(SolitonError::CuspPoint {
            t: if t_min <= 0.0 { 0.0 } else { TAU },
        });
    }
    if n_samples < 2 {
        return Err(SolitonError::InvalidParameter(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let arc = |t: f64| 1.0 - (0.5 * t).cos();
    let s0 = arc(t_min);
    let samples = (0..n_samples)
        .map(|i| {
            let t = t_min + (t_max - t_min) * i as f64 / (n_samples - 1) as f64;
            let cp = cycloid_translator(t)?;
            Ok(CurveSample::from_angle(arc(t) - s0, cp.theta, cp.point, cp.kappa))
        })
        .collect::<Result<Vec<_>>>()?;
    PlaneCurve::new(samples, false)
}

/// `max |κ (V·N) + 1|` over the samples.
pub fn translator_residual(curve: &PlaneCurve, velocity: Vec2) -> Result<f64> {
    if !(velocity.is_finite() && velocity.norm() > 0.0) {
        return Err(SolitonError::InvalidParameter(
            "translator velocity must be finite and nonzero".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for (i, smp) in curve.samples().iter().enumerate() {
        if smp.kappa == 0.0 {
            return Err(SolitonError::ZeroCurvature { index: i });
        }
        worst = worst.max((smp.kappa * velocity.dot(smp.normal) + 1.0).abs());
    }
    Ok(worst)
}

/// Integrates the unit-speed translator equations `θ_s = -1/cos θ`,
/// `X_s = (cos θ, sin θ)` from `(theta0, x0)` over arc length `length`
/// (negative integrates backwards). Stops early when `|θ|` reaches
/// `theta_limit < π/2`. Returns the visited points.
pub fn integrate_translator_curve(
    theta0: f64,
    x0: Vec2,
    length: f64,
    theta_limit: f64,
    tol: Tolerances,
) -> Result<Vec<(f64, Vec2)>> {
    if !(theta0.abs() < theta_limit && theta_limit < FRAC_PI_2) {
        return Err(SolitonError::InvalidParameter(
            "initial angle must lie strictly inside (-limit, limit) with limit < pi/2".into(),
        ));
    }
    let mut f = |_s: f64, y: &[f64; 3]| -> Result<[f64; 3]> {
        let (sn, cs) = y[0].sin_cos();
        Ok([-1.0 / cs, cs, sn])
    };
    let mut s = 0.0;
    let mut y = [theta0, x0.x, x0.y];
    let mut fy = f(s, &y)?;
    let dir = length.signum();
    let mut h = 1e-3 * dir;
    let mut ctl = StepController::default();
    let mut out = vec![(y[0], Vec2::new(y[1], y[2]))];
    while (length - s) * dir > 0.0 {
        if (s + h - length) * dir > 0.0 {
            h = length - s;
        }
        h = h.clamp(-0.01, 0.01);
        let trial = dopri5_step(&mut f, s, &y, &fy, h, tol)?;
        let (ok, fac) = ctl.judge(trial.err);
        if ok {
            if trial.y[0].abs() >= theta_limit {
                break;
            }
            s += h;
            y = trial.y;
            fy = trial.f_end;
            out.push((y[0], Vec2::new(y[1], y[2])));
        }
        h *= fac;
        if h.abs() < 1e-14 {
            return Err(SolitonError::StepUnderflow {
                h: y[1],
                r: y[2],
                step: h,
            });
        }
    }
    Ok(out)
}

/// Orthonormal frame `(v1, v2, v3)` of the tilted product with tilt `mu`.
pub fn tilt_frame(mu: f64) -> [[f64; 3]; 3] {
    let (s, c) = mu.sin_cos();
    [[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]]
}

/// Unit-speed arch of the translating cycloid, `s ∈ (0, 2)`:
/// returns `(α(s), β(s))` with `β'' = -1`.
pub fn unit_speed_cycloid(s: f64) -> Result<(f64, f64)> {
    if !(s > 0.0 && s < 2.0) {
        return Err(SolitonError::CuspPoint {
            t: if s <= 0.0 { 0.0 } else { TAU },
        });
    }
    let t = 2.0 * (1.0 - s).acos();
    let u = 1.0 - s;
    Ok((CYCLOID_RADIUS * (t - t.sin()), 0.5 * (1.0 - u * u)))
}

/// Point of `R × k·C` embedded with the tilted frame:
/// `w v1 + k α(s) v2 + k β(s) v3`.
pub fn tilted_cycloid_point_scaled(mu: f64, curve_scale: f64, s: f64, w: f64) -> Result<[f64; 3]> {
    if !(mu.abs() < FRAC_PI_2) {
        return Err(SolitonError::InvalidParameter(format!(
            "tilt angle must lie in (-pi/2, pi/2), got {mu}"
        )));
    }
    let (a, b) = unit_speed_cycloid(s)?;
    let [v1, v2, v3] = tilt_frame(mu);
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = w * v1[i] + curve_scale * (a * v2[i] + b * v3[i]);
    }
    Ok(out)
}

/// Curve scaling that makes the tilted product translate with velocity
/// `(0, 0, 1)`: the cross-section is the cycloid dilated by `cos μ`.
pub fn tilted_translator_scale(mu: f64) -> f64 {
    mu.cos()
}

/// Point on the tilted translator surface with velocity `(0, 0, 1)`.
pub fn tilted_cycloid_surface_point(mu: f64, s: f64, w: f64) -> Result<[f64; 3]> {
    tilted_cycloid_point_scaled(mu, tilted_translator_scale(mu), s, w)
}

/// Discrete Laplace–Beltrami of `x3` on an `grid × grid` set of chart nodes
/// covering `[s_min, s_max] × [w_min, w_max]`. The metric is estimated from
/// the embedded points with fourth-order central differences; second
/// derivatives of `x3` use three-point differences. Row-major in `(s, w)`.
pub fn tilted_laplacian_x3(
    mu: f64,
    curve_scale: f64,
    s_range: (f64, f64),
    w_range: (f64, f64),
    grid: usize,
) -> Result<Vec<f64>> {
    if grid < 2 {
        return Err(SolitonError::InvalidParameter("grid must be >= 2".into()));
    }
    let ds = (s_range.1 - s_range.0) / (grid - 1) as f64;
    let dw = (w_range.1 - w_range.0) / (grid - 1) as f64;
    let pt = |i: isize, j: isize| {
        tilted_cycloid_point_scaled(
            mu,
            curve_scale,
            s_range.0 + ds * i as f64,
            w_range.0 + dw * j as f64,
        )
    };
    let d4 = |m2: [f64; 3], m1: [f64; 3], p1: [f64; 3], p2: [f64; 3], h: f64| {
        let mut d = [0.0; 3];
        for k in 0..3 {
            d[k] = (m2[k] - 8.0 * m1[k] + 8.0 * p1[k] - p2[k]) / (12.0 * h);
        }
        d
    };
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];

    let mut out = Vec::with_capacity(grid * grid);
    for i in 0..grid as isize {
        for j in 0..grid as isize {
            let c = pt(i, j)?;
            let xs = d4(pt(i - 2, j)?, pt(i - 1, j)?, pt(i + 1, j)?, pt(i + 2, j)?, ds);
            let xw = d4(pt(i, j - 2)?, pt(i, j - 1)?, pt(i, j + 1)?, pt(i, j + 2)?, dw);
            let (g11, g12, g22) = (dot(xs, xs), dot(xs, xw), dot(xw, xw));
            let det = g11 * g22 - g12 * g12;
            let (i11, i12, i22) = (g22 / det, -g12 / det, g11 / det);
            let f = |p: [f64; 3]| p[2];
            let fss = (f(pt(i + 1, j)?) - 2.0 * f(c) + f(pt(i - 1, j)?)) / (ds * ds);
            let fww = (f(pt(i, j + 1)?) - 2.0 * f(c) + f(pt(i, j - 1)?)) / (dw * dw);
            let fsw = (f(pt(i + 1, j + 1)?) - f(pt(i + 1, j - 1)?) - f(pt(i - 1, j + 1)?)
                + f(pt(i - 1, j - 1)?))
                / (4.0 * ds * dw);
            out.push(i11 * fss + 2.0 * i12 * fsw + i22 * fww);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::directed_polyline_distance;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn arch_top_and_cusp() {
        let top = cycloid_translator(PI).unwrap();
        assert!((top.point.x - FRAC_PI_4).abs() < 1e-15);
        assert!((top.point.y - 0.5).abs() < 1e-15);
        assert!(top.theta.abs() < 1e-15);
        assert!((top.kappa + 1.0).abs() < 1e-15);
        assert_eq!(cycloid_point(0.0), Vec2::ZERO);
        assert!(matches!(cycloid_translator(0.0), Err(SolitonError::CuspPoint { .. })));
        assert!(matches!(cycloid_translator(TAU), Err(SolitonError::CuspPoint { .. })));
    }

    #[test]
    fn angle_and_curvature_match_patch_derivatives() {
        for k in 1..40 {
            let t = TAU * k as f64 / 40.0 + 0.01;
            let cp = cycloid_translator(t).unwrap();
            let h = 1e-5;
            let d = cycloid_point(t + h) - cycloid_point(t - h);
            let ang = d.y.atan2(d.x);
            assert!(Vec2::from_angle(ang).distance(Vec2::from_angle(cp.theta)) < 1e-8);
            assert!((-1.0 / cp.kappa - cp.theta.cos()).abs() < 1e-13);
        }
        // next arch: still a translator with the same velocity
        let cp = cycloid_translator(3.0 * PI).unwrap();
        assert!((-1.0 / cp.kappa - cp.theta.cos()).abs() < 1e-13);
    }

    #[test]
    fn residuals_distinguish_speeds() {
        let curve = sample_cycloid(0.1, TAU - 0.1, 500).unwrap();
        assert!(translator_residual(&curve, Vec2::new(0.0, 1.0)).unwrap() < 1e-12);
        let wrong = translator_residual(&curve, Vec2::new(0.0, 2.0)).unwrap();
        assert!((wrong - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrated_translator_lands_on_cycloid() {
        let dense: Vec<Vec2> = (1..20000)
            .map(|i| cycloid_point(TAU * i as f64 / 20000.0))
            .collect();
        for &(theta0, x0) in &[(0.4, Vec2::new(3.0, -1.0)), (-0.9, Vec2::new(-2.0, 5.0))] {
            let tol = Tolerances { rel_tol: 1e-12, abs_tol: 1e-13 };
            let fwd = integrate_translator_curve(theta0, x0, 2.0, 1.5, tol).unwrap();
            let bwd = integrate_translator_curve(theta0, x0, -2.0, 1.5, tol).unwrap();
            let mut pts: Vec<(f64, Vec2)> = bwd.into_iter().rev().collect();
            pts.extend(fwd.into_iter().skip(1));
            // canonicalize: the standard arch has tangent angle θ at t = π - 2θ
            let shift = cycloid_point(PI - 2.0 * theta0) - x0;
            let moved: Vec<Vec2> = pts.iter().map(|(_, p)| *p + shift).collect();
            let d = directed_polyline_distance(&moved, &dense, false);
            assert!(d < 1e-6, "{d}");
        }
    }

    #[test]
    fn untilted_surface_is_cylinder_over_cycloid() {
        for &s in &[0.3, 1.0, 1.7] {
            let p = tilted_cycloid_surface_point(0.0, s, 0.4).unwrap();
            let (a, b) = unit_speed_cycloid(s).unwrap();
            assert_eq!(p, [0.4, a, b]);
        }
    }

    #[test]
    fn unit_speed_arch_has_unit_speed() {
        let h = 1e-6;
        for k in 1..20 {
            let s = 0.1 * k as f64;
            let (a0, b0) = unit_speed_cycloid(s - h).unwrap();
            let (a1, b1) = unit_speed_cycloid(s + h).unwrap();
            let speed = ((a1 - a0).powi(2) + (b1 - b0).powi(2)).sqrt() / (2.0 * h);
            assert!((speed - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn ruling_direction_is_straight() {
        let mu = 0.6;
        let p0 = tilted_cycloid_surface_point(mu, 0.8, -1.0).unwrap();
        let p1 = tilted_cycloid_surface_point(mu, 0.8, 0.0).unwrap();
        let p2 = tilted_cycloid_surface_point(mu, 0.8, 2.0).unwrap();
        for k in 0..3 {
            assert!(((p2[k] - p1[k]) - 2.0 * (p1[k] - p0[k])).abs() < 1e-14);
        }
    }

    #[test]
    fn translator_scaling_gives_unit_laplacian() {
        for &mu in &[0.0, PI / 6.0, FRAC_PI_4, -1.2] {
            let lap = tilted_laplacian_x3(mu, tilted_translator_scale(mu), (0.3, 1.7), (-1.0, 1.0), 64)
                .unwrap();
            for v in lap {
                assert!((v + 1.0).abs() < 1e-5, "mu={mu} v={v}");
            }
        }
    }

    #[test]
    fn reciprocal_scaling_gives_cos_squared() {
        // cross-section dilated by 1/cos μ instead of cos μ
        let mu = FRAC_PI_4;
        let lap = tilted_laplacian_x3(mu, 1.0 / mu.cos(), (0.3, 1.7), (-1.0, 1.0), 64).unwrap();
        for v in lap {
            assert!((v + mu.cos().powi(2)).abs() < 1e-5, "{v}");
        }
    }
}
