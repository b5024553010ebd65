//! Arc-length curvature law of homothetic soliton curves: `1/κ²` is a
//! quadratic in `s` with leading coefficient `c - 1`, so its second
//! derivative is the constant `2(c - 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::geometry::PlaneCurve;
use crate::numeric::{finite_diff_second, fit_quadratic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureLawParams {
    pub c: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl CurvatureLawParams {
    /// `1/κ² = (c-1)s² + α₁s + α₂`.
    pub fn inverse_kappa_sq(&self, s: f64) -> f64 {
        ((self.c - 1.0) * s + self.alpha1) * s + self.alpha2
    }

    pub fn kappa_abs(&self, s: f64) -> f64 {
        1.0 / self.inverse_kappa_sq(s).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureLawReport {
    /// `max |Δ_s(1/κ²) - 2(c-1)|` over interior samples.
    pub max_poisson_residual: f64,
    /// Least-squares quadratic; `fitted.c - 1` is the fitted leading coefficient.
    pub fitted: CurvatureLawParams,
    pub leading_coefficient: f64,
    pub fit_max_residual: f64,
}

pub fn curvature_law_check(curve: &PlaneCurve, c: f64) -> Result<CurvatureLawReport> {
    if curve.len() < 5 {
        return Err(SolitonError::InvalidParameter(format!(
            "curvature law check needs at least 5 samples, got {}",
            curve.len()
        )));
    }
    let s = curve.arc_lengths();
    let mut inv = Vec::with_capacity(curve.len());
    for (i, smp) in curve.samples().iter().enumerate() {
        if smp.kappa == 0.0 {
            return Err(SolitonError::ZeroCurvature { index: i });
        }
        inv.push(1.0 / (smp.kappa * smp.kappa));
    }
    let target = 2.0 * (c - 1.0);
    let mut worst: f64 = 0.0;
    for i in 1..s.len() - 1 {
        worst = worst.max((finite_diff_second(&s, &inv, i)? - target).abs());
    }
    let fit = fit_quadratic(&s, &inv)?;
    Ok(CurvatureLawReport {
        max_poisson_residual: worst,
        fitted: CurvatureLawParams {
            c: fit.a + 1.0,
            alpha1: fit.b,
            alpha2: fit.c,
        },
        leading_coefficient: fit.a,
        fit_max_residual: fit.max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::homothetic::{sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
    use std::f64::consts::TAU;

    fn sample(c: f64, m1: f64, m2: f64, a: f64, b: f64, n: usize) -> PlaneCurve {
        let p = HomotheticCurveParams::new(c, m1, m2).unwrap();
        sample_homothetic_curve(&p, ThetaRange::new(a, b).unwrap(), n).unwrap()
    }

    #[test]
    fn circle_has_constant_inverse_square_curvature() {
        let r = curvature_law_check(&sample(1.0, 1.0, 0.0, 0.0, TAU, 128), 1.0).unwrap();
        assert!(r.max_poisson_residual < 1e-10);
        assert!(r.leading_coefficient.abs() < 1e-10);
        assert!(r.fitted.alpha1.abs() < 1e-10);
        assert!((r.fitted.alpha2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn involute_law_is_affine() {
        let r = curvature_law_check(&sample(1.0, 0.0, 1.0, 0.5, 3.0, 512), 1.0).unwrap();
        assert!(r.leading_coefficient.abs() < 1e-8);
        assert!(r.max_poisson_residual < 1e-6);
    }

    #[test]
    fn spiral_law_matches_closed_form() {
        // c=2, ν=e^θ, cν>0 so s runs from θ=1 downwards: s = 2(e - e^θ)
        // and 1/κ² = 4e^{2θ} = (2e - s)²
        let e = 1f64.exp();
        let curve = sample(2.0, 1.0, 1.0, 0.0, 1.0, 512);
        let r = curvature_law_check(&curve, 2.0).unwrap();
        assert!(r.max_poisson_residual < 1e-6, "{}", r.max_poisson_residual);
        assert!((r.leading_coefficient - 1.0).abs() < 1e-6);
        assert!((r.fitted.alpha1 + 4.0 * e).abs() < 1e-6);
        assert!((r.fitted.alpha2 - 4.0 * e * e).abs() < 1e-6);
        assert!(r.fit_max_residual < 1e-6);
    }

    #[test]
    fn wrong_constant_is_detected() {
        let curve = sample(2.0, 1.0, 1.0, 0.0, 1.0, 128);
        let r = curvature_law_check(&curve, 0.5).unwrap();
        assert!((r.max_poisson_residual - 3.0).abs() < 1e-4);
    }
}
