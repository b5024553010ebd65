//! Infinite bottles: entire monotone profiles at the critical constant
//! `C = 1/(n-1)` interpolating between two cylinders.

use serde::{Deserialize, Serialize};

use super::integrate::integrate_profile_with;
use super::trajectory::{
    chart_log_of, Direction, IntegrationOptions, ProfileIVP, ProfileTolerances, ProfileTrajectory,
    Span, StartChart, Termination,
};
use crate::error::{Result, SolitonError};
use crate::types::{EventTag, SolitonSpec};

/// Relative decrease of `tanθ / r^{n-1}` tolerated by the barrier monitor.
pub const BARRIER_TOL: f64 = 1e-8;
/// The monitor skips samples with `r'` below this multiple of `abs_tol`,
/// where `r'` carries no correct digits at the monitor's tolerance.
pub const BARRIER_SLOPE_FLOOR: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BottleSolution {
    /// Both halves merged, ordered by increasing `h`.
    pub trajectory: ProfileTrajectory,
    pub h1: f64,
    pub r_bot: f64,
    pub r_top: f64,
    /// Largest relative decrease seen by the barrier monitor (0 if none).
    pub barrier_violation: f64,
}

/// The critical constant `1/(n-1)`.
pub fn critical_constant(n: usize) -> f64 {
    1.0 / (n as f64 - 1.0)
}

pub fn check_bottle_data(r0: f64, h0: f64, r0p: f64) -> Result<()> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(SolitonError::BottleHypothesisViolated(format!(
            "need r0 > 0, got {r0}"
        )));
    }
    if !(h0 < 0.0 && h0.is_finite()) {
        return Err(SolitonError::BottleHypothesisViolated(format!(
            "need h0 < 0, got {h0}"
        )));
    }
    let upper = -h0 / r0;
    if !(r0p > 0.0 && r0p < upper) {
        return Err(SolitonError::BottleHypothesisViolated(format!(
            "need 0 < r0' < -h0/r0 = {upper}, got r0' = {r0p}"
        )));
    }
    Ok(())
}

pub fn build_infinite_bottle(n: usize, r0: f64, h0: f64, r0p: f64, span: Option<Span>) -> Result<BottleSolution> {
    build_infinite_bottle_with(n, r0, h0, r0p, span, ProfileTolerances::default())
}

pub fn build_infinite_bottle_with(
    n: usize,
    r0: f64,
    h0: f64,
    r0p: f64,
    span: Option<Span>,
    tolerances: ProfileTolerances,
) -> Result<BottleSolution> {
    check_bottle_data(r0, h0, r0p)?;
    let spec = SolitonSpec::rotational(n, critical_constant(n))?;
    let start = StartChart::GraphOverH { h0, r0, r0p };
    let span = span.unwrap_or_else(|| Span::default_for(&start));
    let ivp = ProfileIVP::new(spec, start, span)?.with_tolerances(tolerances);
    let opts = IntegrationOptions {
        stop_on_asymptote: true,
        ..Default::default()
    };
    let up = integrate_profile_with(&ivp, Direction::IncreasingH, &opts)?;
    let down = integrate_profile_with(&ivp, Direction::DecreasingH, &opts)?;
    let merged = merge_halves(&down, &up);

    let limit = |t: &ProfileTrajectory| {
        t.events_tagged(EventTag::AsymptoteDetected)
            .next()
            .and_then(|e| e.data)
    };
    let (Some(r_bot), Some(r_top)) = (limit(&down), limit(&up)) else {
        let side = if limit(&down).is_none() { "h -> -inf" } else { "h -> +inf" };
        return Err(SolitonError::SpanTooSmall {
            reason: format!("no asymptote detected towards {side} within |h| <= {}", span.max_abs_h),
            partial: Box::new(merged),
        });
    };

    let infl: Vec<f64> = merged
        .events_tagged(EventTag::Inflection)
        .map(|e| e.h)
        .collect();
    if infl.len() != 1 {
        return Err(SolitonError::ClassificationMismatch(format!(
            "expected exactly one inflection, found {} at {infl:?}",
            infl.len()
        )));
    }
    let h1 = infl[0];
    if !(h1 > h0 && h1 < 0.0) {
        return Err(SolitonError::ClassificationMismatch(format!(
            "inflection at h1 = {h1} outside ({h0}, 0)"
        )));
    }
    check_structure(&merged, h1, tolerances)?;
    if !(0.0 < r_bot && r_bot < r_top && r_top.is_finite()) {
        return Err(SolitonError::ClassificationMismatch(format!(
            "limits do not satisfy 0 < r_bot < r_top < inf: {r_bot}, {r_top}"
        )));
    }
    let barrier_violation = barrier_monitor(&merged, h1, BARRIER_SLOPE_FLOOR * tolerances.abs_tol)?;
    Ok(BottleSolution {
        trajectory: merged,
        h1,
        r_bot,
        r_top,
        barrier_violation,
    })
}

/// Joins a decreasing-h run and an increasing-h run from the same start.
pub fn merge_halves(down: &ProfileTrajectory, up: &ProfileTrajectory) -> ProfileTrajectory {
    let rev = down.reversed();
    let mut points = rev.points;
    points.pop();
    points.extend(up.points.iter().copied());
    let mut events = rev.events;
    events.extend(up.events.iter().copied());
    let chart_log = chart_log_of(&points);
    ProfileTrajectory {
        spec: up.spec.clone(),
        points,
        events,
        chart_log,
        termination: if up.termination == down.termination {
            up.termination
        } else {
            Termination::SpanReached
        },
    }
}

/// `r' > 0` and `sign(r'') = sign(h1 - h)` at samples at least one step away
/// from `h1`, and `r` nondecreasing. Far out in the tails `r'` decays below
/// the absolute tolerance and only its magnitude is meaningful, so samples
/// whose derivatives are within the tolerance of zero are not sign-checked,
/// and consecutive radii may differ by the tolerance.
fn check_structure(traj: &ProfileTrajectory, h1: f64, tol: ProfileTolerances) -> Result<()> {
    let pts = &traj.points;
    let noise = |v: f64| tol.abs_tol + tol.rel_tol * v.abs();
    for (i, p) in pts.iter().enumerate() {
        let d1 = p.dr_dh();
        if !(d1 > 0.0 || d1.abs() <= tol.abs_tol) {
            return Err(SolitonError::ClassificationMismatch(format!(
                "r' = {d1} is not positive at h = {}",
                p.h
            )));
        }
        if i > 0 && p.r < pts[i - 1].r - noise(p.r) {
            return Err(SolitonError::ClassificationMismatch(format!(
                "r decreases at h = {}",
                p.h
            )));
        }
    }
    for i in 1..pts.len().saturating_sub(1) {
        let (prev, p, next) = (pts[i - 1], pts[i], pts[i + 1]);
        if prev.h <= h1 && h1 <= next.h {
            continue;
        }
        let d2 = p.d2r_dh2();
        if d2.abs() <= tol.abs_tol {
            continue;
        }
        if d2.signum() != (h1 - p.h).signum() {
            return Err(SolitonError::ClassificationMismatch(format!(
                "r'' = {d2} at h = {} has the wrong sign for h1 = {h1}",
                p.h
            )));
        }
    }
    Ok(())
}

/// Tracks `tanθ / r^{n-1} = 1/(r' r^{n-1})` where `h(r)` is increasing and
/// convex (`h > h1`), `h >= 0` and `r h'(r) - h > 0`. There it must not
/// decrease; returns the largest relative decrease and fails beyond
/// [`BARRIER_TOL`]. Samples with `r' <= min_slope` are skipped.
pub fn barrier_monitor(traj: &ProfileTrajectory, h1: f64, min_slope: f64) -> Result<f64> {
    let nm1 = traj.n() as f64 - 1.0;
    let mut worst: f64 = 0.0;
    let mut prev: Option<f64> = None;
    let applies = |p: &&super::trajectory::ProfilePoint| {
        let d1 = p.dr_dh();
        p.h > h1 && p.h >= 0.0 && d1 > min_slope && p.r / d1 - p.h > 0.0
    };
    for p in traj.points.iter().filter(applies) {
        let v = 1.0 / (p.dr_dh() * p.r.powf(nm1));
        if let Some(q) = prev {
            let drop = (q - v) / q.abs();
            if drop > BARRIER_TOL {
                return Err(SolitonError::BarrierViolated {
                    h: p.h,
                    violation: drop,
                });
            }
            worst = worst.max(drop);
        }
        prev = Some(v);
    }
    Ok(worst)
}
