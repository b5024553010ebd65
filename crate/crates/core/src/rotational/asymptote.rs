//! Limits of `r` along a trajectory tail.

use super::trajectory::ProfileTrajectory;

pub const DEFAULT_TAIL_FRACTION: f64 = 0.2;
const SLOPE_LIMIT: f64 = 1e-6;
const RANGE_LIMIT: f64 = 1e-5;
const NOISE: f64 = 1e-12;

/// Extrapolated limit of `r` over the final `tail_fraction` of samples, or
/// `None` when the tail has not flattened (`|r'| >= 1e-6` at the end or an
/// `r`-range of `1e-5` or more in the window) or is not monotone.
pub fn estimate_asymptote(traj: &ProfileTrajectory, tail_fraction: f64) -> Option<f64> {
    let pts = &traj.points;
    let m = pts.len();
    if m == 0 {
        return None;
    }
    let last = pts[m - 1];
    if m == 1 {
        return (last.dr_dh().abs() < SLOPE_LIMIT).then_some(last.r);
    }
    let count = ((m as f64 * tail_fraction.clamp(0.0, 1.0)).ceil() as usize).clamp(2, m);
    let window = &pts[m - count..];

    if !(last.dr_dh().abs() < SLOPE_LIMIT) {
        return None;
    }
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.r), b.max(p.r)));
    if !(hi - lo < RANGE_LIMIT) {
        return None;
    }
    // wiggles at the integrator's tolerance do not break monotonicity
    let slack = NOISE * hi.abs().max(1.0);
    let increasing = window.windows(2).all(|w| w[1].r >= w[0].r - slack);
    let decreasing = window.windows(2).all(|w| w[1].r <= w[0].r + slack);
    if !(increasing || decreasing) {
        return None;
    }

    // Aitken's delta-squared on three equally spaced heights.
    let h0 = window[0].h;
    let h2 = last.h;
    let hm = 0.5 * (h0 + h2);
    let (Some(r0), Some(r1), Some(r2)) = (
        traj.interpolate_r(h0),
        traj.interpolate_r(hm),
        traj.interpolate_r(h2),
    ) else {
        return Some(last.r);
    };
    let d1 = r1 - r0;
    let d2 = r2 - r1;
    let denom = d2 - d1;
    let noise = 1e-14 * r2.abs().max(1.0);
    if d1.abs() <= noise || d2.abs() <= noise || denom.abs() <= noise {
        return Some(r2);
    }
    let limit = r2 - d2 * d2 / denom;
    // a geometric tail stays on the side it approaches from
    if (limit - r2).abs() > (hi - lo).max(noise) || !limit.is_finite() {
        return Some(r2);
    }
    Some(limit)
}
