//! Residuals of the rotational soliton equation along a trajectory.

use serde::{Deserialize, Serialize};

use super::rhs::rot_profile_residual;
use super::trajectory::ProfileTrajectory;
use crate::error::{Result, SolitonError};

/// Samples with `|X|` beyond this multiple of the starting scale are left
/// out of the divergence check, where `Δ|X|²` is lost to cancellation.
pub const DIVERGENCE_EXTENT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationalResidual {
    /// Max of the profile-equation residual from the stored derivatives.
    pub ode_max: f64,
    /// Max of `|Δ|X|² - 2(n - 1/C)|` from point positions alone.
    pub divergence_max: f64,
    pub divergence_samples: usize,
}

pub fn soliton_residual_rotational(traj: &ProfileTrajectory) -> Result<RotationalResidual> {
    let pts = &traj.points;
    if pts.is_empty() {
        return Err(SolitonError::InvalidParameter("empty trajectory".into()));
    }
    let (n, c) = (traj.n(), traj.c_const());
    let mut ode_max: f64 = 0.0;
    for p in pts {
        let ((rd, hd), dd) = p.kinematics();
        if -hd * p.r + rd * p.h == 0.0 {
            return Err(SolitonError::SupportDegenerate { h: p.h, r: p.r });
        }
        ode_max = ode_max.max(rot_profile_residual(n, c, (p.r, p.h), (rd, hd), dd).abs());
    }
    let (divergence_max, divergence_samples) = divergence_residual(traj);
    Ok(RotationalResidual {
        ode_max,
        divergence_max,
        divergence_samples,
    })
}

/// `Δ_g f = r^{1-n} d/ds (r^{n-1} df/ds)` for `f = r² + h²` with `s` the
/// chord length through the samples, against `2(n - 1/C)`.
fn divergence_residual(traj: &ProfileTrajectory) -> (f64, usize) {
    let pts = &traj.points;
    let (n, c) = (traj.n(), traj.c_const());
    let nm1 = n as f64 - 1.0;
    let target = 2.0 * (n as f64 - 1.0 / c);
    let scale = pts[0].h.hypot(pts[0].r).max(pts[0].r);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 1..pts.len().saturating_sub(1) {
        let (a, b, d) = (pts[i - 1], pts[i], pts[i + 1]);
        if a.h.hypot(a.r).max(d.h.hypot(d.r)) > DIVERGENCE_EXTENT * scale {
            continue;
        }
        let s1 = (b.h - a.h).hypot(b.r - a.r);
        let s2 = (d.h - b.h).hypot(d.r - b.r);
        if !(s1 > 0.0 && s2 > 0.0) {
            continue;
        }
        let f = |p: &super::trajectory::ProfilePoint| p.r * p.r + p.h * p.h;
        let w = |x: f64, y: f64| (0.5 * (x + y)).powf(nm1);
        let flux_l = w(a.r, b.r) * (f(&b) - f(&a)) / s1;
        let flux_r = w(b.r, d.r) * (f(&d) - f(&b)) / s2;
        let lap = (flux_r - flux_l) / (0.5 * (s1 + s2)) / b.r.powf(nm1);
        worst = worst.max((lap - target).abs());
        count += 1;
    }
    (worst, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotational::trajectory::ProfilePoint;
    use crate::types::SolitonSpec;

    #[test]
    fn sampled_cylinder_and_circle() {
        let cyl: Vec<ProfilePoint> = (0..200)
            .map(|i| ProfilePoint::graph_over_h(-5.0 + 0.05 * i as f64, 1.5, 0.0, 0.0))
            .collect();
        let t = ProfileTrajectory::from_points(SolitonSpec::rotational(3, 0.5).unwrap(), cyl).unwrap();
        let res = soliton_residual_rotational(&t).unwrap();
        assert!(res.ode_max < 1e-14);
        assert!(res.divergence_max < 1e-9, "{res:?}");

        let circle: Vec<ProfilePoint> = (0..400)
            .map(|i| {
                let h = -0.95 + 1.9 * i as f64 / 399.0;
                let r = (1.0 - h * h).sqrt();
                ProfilePoint::graph_over_h(h, r, -h / r, -1.0 / r.powi(3))
            })
            .collect();
        let t = ProfileTrajectory::from_points(SolitonSpec::rotational(2, 0.5).unwrap(), circle).unwrap();
        let res = soliton_residual_rotational(&t).unwrap();
        assert!(res.ode_max < 1e-12);
        assert!(res.divergence_max < 1e-3, "{res:?}");
    }

    #[test]
    fn wrong_constant_shows_up() {
        let cyl: Vec<ProfilePoint> = (0..50)
            .map(|i| ProfilePoint::graph_over_h(0.1 * i as f64, 1.0, 0.0, 0.0))
            .collect();
        let t = ProfileTrajectory::from_points(SolitonSpec::rotational(2, 0.5).unwrap(), cyl).unwrap();
        let res = soliton_residual_rotational(&t).unwrap();
        assert!((res.ode_max - 1.0).abs() < 1e-14);
        assert!((res.divergence_max - 2.0).abs() < 1e-9);
    }
}
