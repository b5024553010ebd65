//! Singular shooting from the axis of rotation.
//!
//! Near the axis point `(h0, 0)` the regular solution is `h(r) = h0 + k r²/2
//! + O(r⁴)` with `k = h''(0) = -1/(n C h0)`. Integration leaves the axis at
//! `r = AXIS_OFFSET` from that Taylor seed.

use serde::{Deserialize, Serialize};

use super::integrate::integrate_profile_with;
use super::trajectory::{
    Chart, Direction, IntegrationOptions, ProfileIVP, ProfileTolerances, ProfileTrajectory, Span,
    StartChart,
};
use crate::error::{Result, SolitonError};
use crate::types::SolitonSpec;

/// Number of steps after the seed used to extrapolate `h''(0)`.
pub const AXIS_FIT_STEPS: usize = 10;

/// `h''(0) = -1/(n C h0)`.
pub fn axis_second_derivative(n: usize, c_const: f64, h0: f64) -> f64 {
    -1.0 / (n as f64 * c_const * h0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisShot {
    pub trajectory: ProfileTrajectory,
    /// `h''(0)` extrapolated from the first steps.
    pub h2_numeric: f64,
    pub h2_closed_form: f64,
}

impl AxisShot {
    pub fn h2_relative_error(&self) -> f64 {
        ((self.h2_numeric - self.h2_closed_form) / self.h2_closed_form).abs()
    }
}

/// Shoots from `(h0, 0)` for `C > 1/n`.
pub fn shoot_from_axis(n: usize, c_const: f64, h0: f64, span: Span) -> Result<AxisShot> {
    shoot_from_axis_with(
        n,
        c_const,
        h0,
        span,
        ProfileTolerances::default(),
        &IntegrationOptions::default(),
    )
}

pub fn shoot_from_axis_with(
    n: usize,
    c_const: f64,
    h0: f64,
    span: Span,
    tolerances: ProfileTolerances,
    opts: &IntegrationOptions,
) -> Result<AxisShot> {
    let bound = 1.0 / n as f64;
    if !(c_const > bound) {
        return Err(SolitonError::OutsideStatedRegime { c_const, bound });
    }
    shoot_unchecked(n, c_const, h0, span, tolerances, opts)
}

/// Same integration without the `C > 1/n` restriction. Nothing is claimed
/// about the qualitative behaviour of the result.
pub fn shoot_from_axis_exploratory(
    n: usize,
    c_const: f64,
    h0: f64,
    span: Span,
    tolerances: ProfileTolerances,
    opts: &IntegrationOptions,
) -> Result<AxisShot> {
    shoot_unchecked(n, c_const, h0, span, tolerances, opts)
}

fn shoot_unchecked(
    n: usize,
    c_const: f64,
    h0: f64,
    span: Span,
    tolerances: ProfileTolerances,
    opts: &IntegrationOptions,
) -> Result<AxisShot> {
    let spec = SolitonSpec::rotational(n, c_const)?;
    let ivp = ProfileIVP::new(spec, StartChart::AxisShot { h0 }, span)?.with_tolerances(tolerances);
    let trajectory = integrate_profile_with(&ivp, Direction::IncreasingH, opts)?;
    let h2_numeric = extrapolate_axis_curvature(&trajectory)?;
    Ok(AxisShot {
        trajectory,
        h2_numeric,
        h2_closed_form: axis_second_derivative(n, c_const, h0),
    })
}

/// Least-squares fit `h'/r = k + m r²` over the first [`AXIS_FIT_STEPS`]
/// steps after the seed; returns `k`.
pub fn extrapolate_axis_curvature(traj: &ProfileTrajectory) -> Result<f64> {
    let samples: Vec<(f64, f64)> = traj
        .points
        .iter()
        .skip(1)
        .take_while(|p| p.chart == Chart::GraphOverR)
        .take(AXIS_FIT_STEPS)
        .map(|p| (p.r * p.r, p.d1 / p.r))
        .collect();
    if samples.len() < 2 {
        return Err(SolitonError::InvalidParameter(
            "too few steps near the axis to extrapolate h''(0)".into(),
        ));
    }
    let m = samples.len() as f64;
    let (sx, sy) = samples.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (sxx, sxy) = samples.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        (a + (x - mx) * (x - mx), b + (x - mx) * (y - my))
    });
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    Ok(my - slope * mx)
}
