//! Qualitative classification of axis shots and symmetric starts.
//!
//! The regime is predicted from `C` against the critical value `1/(n-1)`;
//! the trajectory must then exhibit it or the run is reported as
//! inconclusive (span too small) or contradictory.
//!
//! Tails decay or grow like powers of `h` away from the critical constant
//! (`r ~ h^{-k}` with `k = (1 - C(n-1))/(C(n-1))` when closing up), so
//! reaching `r < 1e-4 r_max` can take `h` of order `1e16`. The default span
//! is therefore [`CLASSIFY_SPAN_FACTOR`] times the starting scale, and the
//! far tail is integrated in logarithmic variables with a linearly implicit
//! method.

use serde::{Deserialize, Serialize};

use super::integrate::integrate_profile_with;
use super::shoot::{extrapolate_axis_curvature, shoot_from_axis_with};
use super::trajectory::{
    Direction, IntegrationOptions, ProfileIVP, ProfileTolerances, ProfileTrajectory, Span,
    StartChart, Termination,
};
use crate::error::{Result, SolitonError};
use crate::types::{EventTag, Regime, SolitonSpec};

pub const CLASSIFY_SPAN_FACTOR: f64 = 1e30;
/// Relative distance from `1/(n-1)` treated as the critical constant.
pub const CRITICAL_REL_TOL: f64 = 1e-12;
/// Closing profiles are accepted once `r < NEAR_AXIS_FRACTION * r_max`.
pub const NEAR_AXIS_FRACTION: f64 = 1e-4;
/// Growth `r(h_end)/r(h_end/10)` required to call the radius unbounded.
pub const GROWTH_RATIO: f64 = 1.01;
const STIFF_TAIL_RATIO: f64 = 20.0;

/// Position of `C` relative to the critical constant `1/(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantBand {
    /// `1/n < C < 1/(n-1)`.
    Subcritical,
    Critical,
    /// `C > 1/(n-1)`.
    Supercritical,
}

pub fn constant_band(n: usize, c_const: f64) -> Result<ConstantBand> {
    let lower = 1.0 / n as f64;
    if !(c_const > lower) {
        return Err(SolitonError::OutsideStatedRegime {
            c_const,
            bound: lower,
        });
    }
    let crit = 1.0 / (n as f64 - 1.0);
    Ok(if ((c_const - crit) / crit).abs() <= CRITICAL_REL_TOL {
        ConstantBand::Critical
    } else if c_const < crit {
        ConstantBand::Subcritical
    } else {
        ConstantBand::Supercritical
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub regime: Regime,
    pub trajectory: ProfileTrajectory,
    /// `h''(0)` extrapolated numerically (axis shots only).
    pub h2_numeric: Option<f64>,
}

fn options(band: ConstantBand) -> IntegrationOptions {
    IntegrationOptions {
        stop_on_asymptote: band == ConstantBand::Critical,
        near_axis_fraction: (band == ConstantBand::Subcritical).then_some(NEAR_AXIS_FRACTION),
        // the critical tail decays like a Gaussian and stays non-stiff
        stiff_tail_ratio: (band != ConstantBand::Critical).then_some(STIFF_TAIL_RATIO),
        max_step: Some(f64::INFINITY),
        ..Default::default()
    }
}

fn default_span(scale: f64) -> Span {
    let e = CLASSIFY_SPAN_FACTOR * scale;
    Span {
        max_abs_h: e,
        max_r: e,
    }
}

/// Axis shot from `(h0, 0)`: `ConvergesToCylinder`, `UnboundedRadius` or
/// `ClosesToAxis`.
pub fn classify_hyperplane_expander(n: usize, c_const: f64, h0: f64, span: Option<Span>) -> Result<Classification> {
    classify_hyperplane_expander_with(n, c_const, h0, span, ProfileTolerances::default())
}

pub fn classify_hyperplane_expander_with(
    n: usize,
    c_const: f64,
    h0: f64,
    span: Option<Span>,
    tolerances: ProfileTolerances,
) -> Result<Classification> {
    let band = constant_band(n, c_const)?;
    let span = span.unwrap_or_else(|| default_span(h0.abs()));
    let shot = shoot_from_axis_with(n, c_const, h0, span, tolerances, &options(band))?;
    let traj = shot.trajectory;
    let regime = match band {
        ConstantBand::Critical => {
            let r_top = converged_limit(&traj)?;
            check_rising_concave(&traj, |_| true)?;
            Regime::ConvergesToCylinder { r_top }
        }
        ConstantBand::Supercritical => {
            check_unbounded(&traj)?;
            check_rising_concave(&traj, |_| true)?;
            Regime::UnboundedRadius
        }
        ConstantBand::Subcritical => {
            let h1 = closing_inflection(&traj)?;
            check_sign_pattern(&traj, h1, 1.0)?;
            Regime::ClosesToAxis { h1 }
        }
    };
    let h2_numeric = Some(extrapolate_axis_curvature(&traj)?);
    Ok(Classification {
        regime,
        trajectory: traj,
        h2_numeric,
    })
}

/// Symmetric start `r(0) = r0`, `r'(0) = 0`, integrated for `h > 0`:
/// `ConstantCylinder`, `MinAtOriginUnbounded` or `MaxAtOriginClosesToAxis`.
pub fn classify_hypercylinder_expander(n: usize, c_const: f64, r0: f64, span: Option<Span>) -> Result<Classification> {
    classify_hypercylinder_expander_with(n, c_const, r0, span, ProfileTolerances::default())
}

pub fn classify_hypercylinder_expander_with(
    n: usize,
    c_const: f64,
    r0: f64,
    span: Option<Span>,
    tolerances: ProfileTolerances,
) -> Result<Classification> {
    let band = constant_band(n, c_const)?;
    let start = StartChart::SymmetricCylinder { r0 };
    let span = span.unwrap_or_else(|| default_span(r0));
    let ivp = ProfileIVP::new(SolitonSpec::rotational(n, c_const)?, start, span)?
        .with_tolerances(tolerances);
    let traj = integrate_profile_with(&ivp, Direction::IncreasingH, &options(band))?;
    let regime = match band {
        ConstantBand::Critical => {
            let dev = traj
                .points
                .iter()
                .map(|p| (p.r - r0).abs())
                .fold(0.0, f64::max);
            let allowed = tolerances.abs_tol * span.max_abs_h.max(1.0);
            if dev > allowed {
                return Err(SolitonError::ClassificationMismatch(format!(
                    "critical symmetric start drifted from r0 by {dev:e}"
                )));
            }
            Regime::ConstantCylinder
        }
        ConstantBand::Supercritical => {
            check_unbounded(&traj)?;
            let h1 = single_inflection(&traj)?;
            check_sign_pattern(&traj, h1, -1.0)?;
            Regime::MinAtOriginUnbounded { h1 }
        }
        ConstantBand::Subcritical => {
            let h1 = closing_inflection(&traj)?;
            check_sign_pattern(&traj, h1, 1.0)?;
            Regime::MaxAtOriginClosesToAxis { h1 }
        }
    };
    Ok(Classification {
        regime,
        trajectory: traj,
        h2_numeric: None,
    })
}

fn too_small(traj: &ProfileTrajectory, reason: String) -> SolitonError {
    SolitonError::SpanTooSmall {
        reason,
        partial: Box::new(traj.clone()),
    }
}

fn converged_limit(traj: &ProfileTrajectory) -> Result<f64> {
    traj.events_tagged(EventTag::AsymptoteDetected)
        .next()
        .and_then(|e| e.data)
        .ok_or_else(|| too_small(traj, "no asymptote detected".into()))
}

/// `r'> 0` and `r'' < 0` wherever the profile is a graph over `h`.
fn check_rising_concave(traj: &ProfileTrajectory, keep: impl Fn(f64) -> bool) -> Result<()> {
    for p in traj.points.iter().filter(|p| keep(p.h)) {
        let (d1, d2) = (p.dr_dh(), p.d2r_dh2());
        if !(d1 > 0.0) || d2 > 0.0 {
            return Err(SolitonError::ClassificationMismatch(format!(
                "expected r' > 0, r'' < 0 but found r' = {d1}, r'' = {d2} at h = {}",
                p.h
            )));
        }
    }
    Ok(())
}

fn check_unbounded(traj: &ProfileTrajectory) -> Result<()> {
    if traj.termination != Termination::SpanReached {
        return Err(SolitonError::ClassificationMismatch(format!(
            "expected unbounded growth, integration ended with {:?}",
            traj.termination
        )));
    }
    let last = traj.points.last().unwrap();
    let earlier = traj
        .points
        .iter()
        .rev()
        .find(|p| p.h <= 0.1 * last.h)
        .ok_or_else(|| too_small(traj, "tail too short for a growth test".into()))?;
    let ratio = last.r / earlier.r;
    if !(ratio > GROWTH_RATIO) {
        return Err(too_small(
            traj,
            format!("radius grew only by {ratio} over the last decade of h"),
        ));
    }
    Ok(())
}

fn single_inflection(traj: &ProfileTrajectory) -> Result<f64> {
    let infl: Vec<f64> = traj
        .events_tagged(EventTag::Inflection)
        .map(|e| e.h)
        .collect();
    match infl.as_slice() {
        [h1] => Ok(*h1),
        [] => Err(too_small(traj, "no inflection found".into())),
        _ => Err(SolitonError::ClassificationMismatch(format!(
            "expected one inflection, found {infl:?}"
        ))),
    }
}

fn closing_inflection(traj: &ProfileTrajectory) -> Result<f64> {
    match traj.termination {
        Termination::NearAxis | Termination::AxisApproach => single_inflection(traj),
        Termination::SpanReached | Termination::StepLimit => Err(too_small(
            traj,
            format!(
                "radius did not fall below {NEAR_AXIS_FRACTION} r_max (r = {} at h = {})",
                traj.points.last().unwrap().r,
                traj.points.last().unwrap().h
            ),
        )),
        other => Err(SolitonError::ClassificationMismatch(format!(
            "expected the profile to close up, integration ended with {other:?}"
        ))),
    }
}

/// `sign(r'') = sign * sign(h - h1)` at samples away from `h1` (the first
/// sample and the bracketing pair are skipped).
fn check_sign_pattern(traj: &ProfileTrajectory, h1: f64, sign: f64) -> Result<()> {
    let pts = &traj.points;
    for i in 1..pts.len().saturating_sub(1) {
        let (prev, p, next) = (pts[i - 1], pts[i], pts[i + 1]);
        if prev.h <= h1 && h1 <= next.h {
            continue;
        }
        let want = sign * (p.h - h1).signum();
        let got = p.d2r_dh2();
        if got.signum() != want {
            return Err(SolitonError::ClassificationMismatch(format!(
                "r'' = {got} at h = {} does not have sign {want} (h1 = {h1})",
                p.h
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands() {
        assert_eq!(constant_band(2, 1.0).unwrap(), ConstantBand::Critical);
        assert_eq!(constant_band(2, 1.0 + 1e-13).unwrap(), ConstantBand::Critical);
        assert_eq!(constant_band(2, 0.7).unwrap(), ConstantBand::Subcritical);
        assert_eq!(constant_band(3, 1.0).unwrap(), ConstantBand::Supercritical);
        assert!(constant_band(2, 0.5).is_err());
    }

    #[test]
    fn trichotomy_for_planes() {
        let got: Vec<&str> = [0.7, 1.0, 2.0]
            .iter()
            .map(|&c| classify_hyperplane_expander(2, c, -1.0, None).unwrap().regime.name())
            .collect();
        assert_eq!(got, ["ClosesToAxis", "ConvergesToCylinder", "UnboundedRadius"]);
    }

    #[test]
    fn short_span_is_inconclusive() {
        let span = Span::uniform(10.0).unwrap();
        assert!(matches!(
            classify_hyperplane_expander(2, 0.7, -1.0, Some(span)),
            Err(SolitonError::SpanTooSmall { .. })
        ));
    }
}
