//! Closed-form homothetic soliton curves parametrized by tangential angle.
//!
//! With tangent `T = (cos θ, sin θ)` and normal `N = (-sin θ, cos θ)` the
//! support function `ν = X·N` obeys `ν'' + (1 - c) ν = 0` and the curve is
//! recovered as `X = -ν' T + ν N`. Differentiating gives `dX/dθ = -c ν T`,
//! so arc length along `T` runs opposite to `θ` wherever `c ν > 0`.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Result, SolitonError};
use crate::geometry::{CurveSample, PlaneCurve, Vec2};
use crate::numeric::integrate_adaptive;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomotheticCurveParams {
    pub c: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// `sqrt(|1 - c|)`.
    pub alpha: f64,
}

impl HomotheticCurveParams {
    pub fn new(c: f64, mu1: f64, mu2: f64) -> Result<Self> {
        if !(c.is_finite() && c != 0.0) {
            return Err(SolitonError::InvalidParameter(format!(
                "curve speed constant must be finite and nonzero, got {c}"
            )));
        }
        if !(mu1.is_finite() && mu2.is_finite()) || (mu1 == 0.0 && mu2 == 0.0) {
            return Err(SolitonError::InvalidParameter(
                "integration constants (mu1, mu2) must be finite and not both zero".into(),
            ));
        }
        Ok(Self {
            c,
            mu1,
            mu2,
            alpha: (1.0 - c).abs().sqrt(),
        })
    }

    /// `(λ μ1, λ μ2)`; the curve is dilated by `λ`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.c, lambda * self.mu1, lambda * self.mu2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub nu: f64,
    pub dnu_dtheta: f64,
}

pub fn support_function(p: &HomotheticCurveParams, theta: f64) -> Support {
    let a = p.alpha;
    if p.c < 1.0 {
        let (s, c) = (a * theta).sin_cos();
        Support {
            nu: p.mu1 * c + p.mu2 * s,
            dnu_dtheta: a * (-p.mu1 * s + p.mu2 * c),
        }
    } else if p.c == 1.0 {
        Support {
            nu: p.mu1 + p.mu2 * theta,
            dnu_dtheta: p.mu2,
        }
    } else {
        let (s, c) = ((a * theta).sinh(), (a * theta).cosh());
        Support {
            nu: p.mu1 * c + p.mu2 * s,
            dnu_dtheta: a * (p.mu1 * s + p.mu2 * c),
        }
    }
}

/// Point assembled from the support function: `X = -ν' T + ν N`.
pub fn homothetic_curve_point(p: &HomotheticCurveParams, theta: f64) -> Vec2 {
    let Support { nu, dnu_dtheta } = support_function(p, theta);
    let (s, c) = theta.sin_cos();
    Vec2::new(-dnu_dtheta * c - nu * s, -dnu_dtheta * s + nu * c)
}

/// The explicit patch written out case by case, kept separate from
/// [`homothetic_curve_point`] so the two can be compared.
pub fn homothetic_curve_patch(p: &HomotheticCurveParams, theta: f64) -> Vec2 {
    let (m1, m2, a) = (p.mu1, p.mu2, p.alpha);
    let (st, ct) = theta.sin_cos();
    if p.c < 1.0 {
        let (sa, ca) = (a * theta).sin_cos();
        let first = a * (m1 * sa - m2 * ca);
        let second = m1 * ca + m2 * sa;
        Vec2::new(first * ct - second * st, first * st + second * ct)
    } else if p.c == 1.0 {
        let lin = m1 + m2 * theta;
        Vec2::new(-m2 * ct - lin * st, -m2 * st + lin * ct)
    } else {
        let (sa, ca) = ((a * theta).sinh(), (a * theta).cosh());
        let first = a * (m1 * sa + m2 * ca);
        let second = m1 * ca + m2 * sa;
        Vec2::new(-first * ct - second * st, -first * st + second * ct)
    }
}

/// Closed interval of tangential angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaRange {
    pub min: f64,
    pub max: f64,
}

impl ThetaRange {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(SolitonError::InvalidParameter(format!(
                "theta range must satisfy min < max, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max })
    }
}

/// Returns the first `θ` in the range where `ν` vanishes, scanning at
/// `density` points and refining sign changes by bisection.
pub fn find_support_zero(
    p: &HomotheticCurveParams,
    range: ThetaRange,
    density: usize,
) -> Option<f64> {
    let m = density.max(2);
    let at = |i: usize| range.min + (range.max - range.min) * i as f64 / (m - 1) as f64;
    let nu = |t: f64| support_function(p, t).nu;
    let mut prev_t = at(0);
    let mut prev = nu(prev_t);
    if prev == 0.0 {
        return Some(prev_t);
    }
    for i in 1..m {
        let t = at(i);
        let v = nu(t);
        if v == 0.0 {
            return Some(t);
        }
        if v.signum() != prev.signum() {
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if nu(mid).signum() == prev.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_t = t;
        prev = v;
    }
    None
}

/// Samples the curve on `n_samples` equally spaced angles. The samples are
/// ordered by increasing arc length along `T`. When the range closes the
/// curve up (a full turn of a circle) the duplicate endpoint is dropped and
/// the curve is marked closed.
pub fn sample_homothetic_curve(
    p: &HomotheticCurveParams,
    range: ThetaRange,
    n_samples: usize,
) -> Result<PlaneCurve> {
    if n_samples < 2 {
        return Err(SolitonError::InvalidParameter(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    if let Some(theta) = find_support_zero(p, range, 10 * n_samples) {
        return Err(SolitonError::SupportVanishes { theta });
    }

    let span = range.max - range.min;
    let start = homothetic_curve_point(p, range.min);
    let end = homothetic_curve_point(p, range.max);
    let turns = span / TAU;
    let scale = start.norm().max(end.norm()).max(1.0);
    let closed = (turns - turns.round()).abs() < 1e-12
        && turns.round() >= 1.0
        && start.distance(end) <= 1e-12 * scale;

    let count = if closed { n_samples + 1 } else { n_samples };
    let step = span / (count - 1) as f64;
    let thetas: Vec<f64> = (0..count)
        .map(|i| {
            if i + 1 == count {
                range.max
            } else {
                range.min + step * i as f64
            }
        })
        .collect();

    // Signed arc length along T: ds = -c ν dθ.
    let c = p.c;
    let mut signed = Vec::with_capacity(count);
    signed.push(0.0);
    for w in thetas.windows(2) {
        let piece = integrate_adaptive(|t| -c * support_function(p, t).nu, w[0], w[1], 1e-13);
        signed.push(signed.last().unwrap() + piece);
    }
    let mut order: Vec<usize> = (0..count).collect();
    if c * support_function(p, range.min).nu > 0.0 {
        order.reverse();
    }
    let s0 = signed[order[0]];
    let keep = if closed { count - 1 } else { count };
    let samples = order
        .iter()
        .take(keep)
        .map(|&i| {
            let th = thetas[i];
            let nu = support_function(p, th).nu;
            CurveSample::from_angle(
                signed[i] - s0,
                th,
                homothetic_curve_point(p, th),
                -1.0 / (c * nu),
            )
        })
        .collect();
    PlaneCurve::new(samples, closed)
}

/// `max |κ (X·N) + 1/c|` over the samples.
pub fn homothetic_residual(curve: &PlaneCurve, c: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, smp) in curve.samples().iter().enumerate() {
        if smp.kappa == 0.0 {
            return Err(SolitonError::ZeroCurvature { index: i });
        }
        worst = worst.max((smp.kappa * smp.point.dot(smp.normal) + 1.0 / c).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn params(c: f64, m1: f64, m2: f64) -> HomotheticCurveParams {
        HomotheticCurveParams::new(c, m1, m2).unwrap()
    }

    #[test]
    fn support_special_cases() {
        let p = params(1.0, 2.5, 0.0);
        let s = support_function(&p, 0.7);
        assert_eq!((s.nu, s.dnu_dtheta), (2.5, 0.0));
        let p = params(1.0, 0.0, 1.0);
        let s = support_function(&p, 0.7);
        assert_eq!((s.nu, s.dnu_dtheta), (0.7, 1.0));
        let p = params(2.0, 1.0, 1.0);
        let s = support_function(&p, 0.0);
        assert_eq!((s.nu, s.dnu_dtheta), (1.0, 1.0));
    }

    #[test]
    fn support_solves_its_ode() {
        for &(c, m1, m2) in &[(-1.0, 0.3, 1.2), (0.5, 1.0, -0.4), (1.0, 0.2, 0.9), (3.0, -1.0, 0.5)] {
            let p = params(c, m1, m2);
            let h = 1e-4;
            for k in 0..10 {
                let t = -1.0 + 0.2 * k as f64;
                let d2 = (support_function(&p, t + h).nu - 2.0 * support_function(&p, t).nu
                    + support_function(&p, t - h).nu)
                    / (h * h);
                let nu = support_function(&p, t).nu;
                assert!((d2 + (1.0 - c) * nu).abs() < 1e-5, "c={c} t={t}");
                let d1 = (support_function(&p, t + h).nu - support_function(&p, t - h).nu) / (2.0 * h);
                assert!((d1 - support_function(&p, t).dnu_dtheta).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn circle_and_spiral_points() {
        let r = 1.7;
        let p = params(1.0, r, 0.0);
        for k in 0..8 {
            let x = homothetic_curve_point(&p, k as f64);
            assert!((x.norm() - r).abs() < 1e-14);
        }
        let p = params(2.0, 1.0, 1.0);
        for k in 0..8 {
            let t = -1.0 + 0.3 * k as f64;
            let x = homothetic_curve_point(&p, t);
            // log spiral r = e^{θ tan β}/cos β at β = π/4, same polar angle offset
            let expected = t.exp() / FRAC_PI_4.cos();
            assert!((x.norm() - expected).abs() < 1e-12 * expected);
        }
        let p = params(0.5, 1.0, 0.0);
        let x = homothetic_curve_point(&p, 0.0);
        assert_eq!((x.x, x.y), (0.0, 1.0));
    }

    #[test]
    fn patch_agrees_with_support_assembly() {
        for &(c, m1, m2) in &[(-2.0, 0.3, 1.2), (0.5, 1.0, -0.4), (1.0, 0.2, 0.9), (3.0, -1.0, 0.5)] {
            let p = params(c, m1, m2);
            for k in 0..20 {
                let t = -2.0 + 0.2 * k as f64;
                let a = homothetic_curve_point(&p, t);
                let b = homothetic_curve_patch(&p, t);
                assert!(a.distance(b) < 1e-12 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn sampled_circle_is_closed_with_constant_curvature() {
        let p = params(1.0, 1.0, 0.0);
        let curve = sample_homothetic_curve(&p, ThetaRange::new(0.0, TAU).unwrap(), 256).unwrap();
        assert!(curve.is_closed());
        assert_eq!(curve.len(), 256);
        for s in curve.samples() {
            assert!((s.kappa + 1.0).abs() < 1e-15);
        }
        assert!(homothetic_residual(&curve, 1.0).unwrap() < 1e-12);
        assert!((homothetic_residual(&curve, 2.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((curve.length() - TAU).abs() < 1e-3);
    }

    #[test]
    fn involute_curvature_matches_finite_differences_of_patch() {
        let p = params(1.0, 0.0, 1.0);
        let curve = sample_homothetic_curve(&p, ThetaRange::new(0.1, 3.0).unwrap(), 400).unwrap();
        for s in curve.samples() {
            assert!((s.kappa + 1.0 / s.theta).abs() < 1e-14);
        }
        // κ = dθ/ds from the sampled data itself
        let smp = curve.samples();
        for i in 1..smp.len() - 1 {
            let d = (smp[i + 1].theta - smp[i - 1].theta) / (smp[i + 1].s - smp[i - 1].s);
            assert!((d - smp[i].kappa).abs() < 1e-3 * smp[i].kappa.abs());
        }
    }

    #[test]
    fn tangent_points_along_increasing_arc_length() {
        for &(c, m1, m2) in &[(-1.0, 1.0, 0.0), (0.5, 1.0, 0.0), (2.0, 1.0, 1.0), (1.0, 0.0, -1.0)] {
            let p = params(c, m1, m2);
            let curve = sample_homothetic_curve(&p, ThetaRange::new(0.2, 0.9).unwrap(), 200).unwrap();
            let smp = curve.samples();
            for i in 1..smp.len() - 1 {
                let chord = (smp[i + 1].point - smp[i - 1].point).normalized();
                assert!(chord.dot(smp[i].tangent) > 1.0 - 1e-6, "c={c}");
            }
        }
    }

    #[test]
    fn spiral_arc_length_matches_closed_form() {
        // c = 2, μ = (1, 1): ν = e^θ, ds/dθ = 2 e^θ
        let p = params(2.0, 1.0, 1.0);
        let curve = sample_homothetic_curve(&p, ThetaRange::new(0.0, 1.0).unwrap(), 64).unwrap();
        assert!((curve.length() - 2.0 * (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn vanishing_support_is_refused() {
        let p = params(1.0, 0.0, 1.0);
        match sample_homothetic_curve(&p, ThetaRange::new(-1.0, 1.0).unwrap(), 50) {
            Err(SolitonError::SupportVanishes { theta }) => assert!(theta.abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        // zero strictly between samples of the coarse grid
        let p = params(0.5, 1.0, 0.0);
        let zero = PI / 2.0 / 0.5f64.sqrt();
        assert!(matches!(
            sample_homothetic_curve(&p, ThetaRange::new(0.0, zero + 1e-3).unwrap(), 3),
            Err(SolitonError::SupportVanishes { .. })
        ));
    }
}
