//! One explicit Euler step of the flow with adaptive halving.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::geometry::{menger_curvature, PlaneCurve, Vec2};
use crate::numeric::CubicSpline;

pub const MAX_HALVINGS: u32 = 20;
/// Steps are capped at `CFL_FACTOR * min(Δs² κ²)`; the linearized flow is
/// a heat equation with diffusivity `1/κ²`.
pub const CFL_FACTOR: f64 = 0.4;

/// What resampling equidistributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spacing {
    ArcLength,
    /// Tangent angle. The linearized flow has unit diffusivity in the
    /// tangent angle, so this keeps the stable step uniform along the curve.
    TurningAngle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResamplePolicy {
    /// Re-equidistribute every `every` accepted steps (0 never).
    pub every: usize,
    pub spacing: Spacing,
}

impl Default for ResamplePolicy {
    fn default() -> Self {
        Self {
            every: 10,
            spacing: Spacing::ArcLength,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub curve: PlaneCurve,
    pub time: f64,
    /// Requested step.
    pub dt: f64,
    pub resample: ResamplePolicy,
    pub steps: usize,
    /// Step actually taken by the last call to [`flow_step`].
    pub last_dt: f64,
}

impl FlowState {
    pub fn new(curve: PlaneCurve, dt: f64) -> Result<Self> {
        if !(dt >= 0.0 && dt.is_finite()) {
            return Err(SolitonError::InvalidParameter(format!(
                "time step must be finite and nonnegative, got {dt}"
            )));
        }
        if curve.len() < 3 {
            return Err(SolitonError::InvalidParameter(format!(
                "flow needs at least 3 samples, got {}",
                curve.len()
            )));
        }
        Ok(Self {
            curve,
            time: 0.0,
            dt,
            resample: ResamplePolicy::default(),
            steps: 0,
            last_dt: 0.0,
        })
    }
}

/// `CFL_FACTOR * min_i Δs_i² κ_i²` with `Δs_i` the shorter adjacent edge.
pub fn stable_step(curve: &PlaneCurve) -> f64 {
    let pts = curve.points();
    let m = pts.len();
    let closed = curve.is_closed();
    let edge = |i: usize| -> Option<f64> {
        if i + 1 < m {
            Some(pts[i].distance(pts[i + 1]))
        } else if closed {
            Some(pts[m - 1].distance(pts[0]))
        } else {
            None
        }
    };
    let mut best = f64::INFINITY;
    for (i, smp) in curve.samples().iter().enumerate() {
        let before = if i > 0 { edge(i - 1) } else if closed { edge(m - 1) } else { None };
        let ds = [before, edge(i)].into_iter().flatten().fold(f64::INFINITY, f64::min);
        best = best.min(ds * ds * smp.kappa * smp.kappa);
    }
    CFL_FACTOR * best
}

fn degenerate(time: f64, p: Vec2) -> SolitonError {
    SolitonError::CurvatureDegenerate { time, x: p.x, y: p.y }
}

/// Normal speed `1/κ` (signed) and unit normal at each vertex from the
/// circle through its neighbours. The ends of open curves extrapolate
/// `ln|1/κ|` linearly from the second and third vertices inward, whose
/// stencils do not contain the end vertex, and take the normal of the end
/// chord. The logarithm keeps the sign where the speed decays towards a
/// cusp.
/// Stencils through the end vertex make it anti-diffusive and the explicit
/// scheme unstable; copying the neighbour's speed is stable but imposes a
/// spurious boundary condition.
fn speeds(points: &[Vec2], closed: bool) -> Vec<(f64, Vec2)> {
    let m = points.len();
    let at = |i: usize, a: usize, b: usize| {
        let k = menger_curvature(points[a], points[i], points[b]);
        (1.0 / k, (points[b] - points[a]).normalized().perp())
    };
    (0..m)
        .map(|i| {
            if closed {
                at(i, (i + m - 1) % m, (i + 1) % m)
            } else if i == 0 {
                let f = |j: usize| at(j, j - 1, j + 1).0;
                (extrapolate(f(2), f(3)), (points[1] - points[0]).normalized().perp())
            } else if i == m - 1 {
                let f = |j: usize| at(j, j - 1, j + 1).0;
                (extrapolate(f(m - 3), f(m - 4)), (points[m - 1] - points[m - 2]).normalized().perp())
            } else {
                at(i, i - 1, i + 1)
            }
        })
        .collect()
}

/// Value two spacings beyond `near` on the line through `(ln|far|, ln|near|)`.
fn extrapolate(near: f64, far: f64) -> f64 {
    if near.signum() != far.signum() {
        return near;
    }
    near * (near / far).powi(2)
}

fn advance(points: &[Vec2], v: &[(f64, Vec2)], h: f64) -> Vec<Vec2> {
    points.iter().zip(v).map(|(&p, &(f, n))| p - (h * f) * n).collect()
}

fn bad_speed(f: f64) -> bool {
    !f.is_finite() || f == 0.0
}

/// One step `X <- X - dt (1/κ) N` with `κ` and `N` from three-point stencils
/// on the polygon (see [`speeds`] for the ends of open curves). The step is the requested `dt` capped by [`stable_step`]
/// and halved while any curvature changes sign.
pub fn flow_step(state: &FlowState) -> Result<FlowState> {
    if state.dt == 0.0 {
        return Ok(state.clone());
    }
    let closed = state.curve.is_closed();
    let points = state.curve.points();
    let v = speeds(&points, closed);
    if let Some(i) = v.iter().position(|(f, _)| bad_speed(*f)) {
        return Err(degenerate(state.time, points[i]));
    }
    let mut h = state.dt.min(stable_step(&state.curve));
    let mut halvings = 0;
    let next = loop {
        let pts = advance(&points, &v, h);
        let moved = speeds(&pts, closed);
        let flipped = v
            .iter()
            .zip(&moved)
            .position(|(a, b)| bad_speed(b.0) || a.0.signum() != b.0.signum());
        match flipped {
            None => break pts,
            Some(i) if halvings == MAX_HALVINGS => return Err(degenerate(state.time, points[i])),
            Some(_) => {
                h *= 0.5;
                halvings += 1;
            }
        }
    };
    let steps = state.steps + 1;
    let every = state.resample.every;
    let pts = if every > 0 && steps % every == 0 {
        resample(&next, closed, state.resample.spacing)
    } else {
        next
    };
    Ok(FlowState {
        curve: PlaneCurve::from_polyline(&pts, closed)?,
        time: state.time + h,
        dt: state.dt,
        resample: state.resample,
        steps,
        last_dt: h,
    })
}

/// Steps until `t_end`, shortening the last step to land on it.
pub fn flow_until(mut state: FlowState, t_end: f64) -> Result<FlowState> {
    let nominal = state.dt;
    if nominal == 0.0 {
        return Ok(state);
    }
    while state.time < t_end {
        let remaining = t_end - state.time;
        if remaining <= 1e-14 * t_end.abs().max(1.0) {
            break;
        }
        state.dt = nominal.min(remaining);
        state = flow_step(&state)?;
    }
    state.dt = nominal;
    Ok(state)
}

/// Same number of vertices spaced uniformly in chord length.
pub fn resample_uniform(points: &[Vec2], closed: bool) -> Vec<Vec2> {
    resample(points, closed, Spacing::ArcLength)
}

/// Exterior angle at each vertex (copied from the neighbour at open ends).
fn exterior_angles(points: &[Vec2], closed: bool) -> Vec<f64> {
    let m = points.len();
    let mut a: Vec<f64> = (0..m)
        .map(|i| {
            if !closed && (i == 0 || i == m - 1) {
                return 0.0;
            }
            let (p, q) = (points[(i + m - 1) % m], points[(i + 1) % m]);
            let (u, v) = (points[i] - p, q - points[i]);
            u.cross(v).atan2(u.dot(v)).abs()
        })
        .collect();
    if !closed {
        a[0] = a[1];
        a[m - 1] = a[m - 2];
    }
    a
}

/// Same number of vertices spaced uniformly in the chosen parameter, by
/// cubic interpolation: a periodic spline for closed curves, four-point
/// Lagrange stencils (one-sided at the ends) for open ones, whose ends stay
/// fixed. Turning angle is measured by half the exterior angles at the two
/// ends of each edge.
pub fn resample(points: &[Vec2], closed: bool, spacing: Spacing) -> Vec<Vec2> {
    let m = points.len();
    let edges = if closed { m } else { m - 1 };
    let angles = exterior_angles(points, closed);
    let edge = |i: usize| match spacing {
        Spacing::ArcLength => points[i].distance(points[(i + 1) % m]),
        Spacing::TurningAngle => 0.5 * (angles[i] + angles[(i + 1) % m]),
    };
    let mut knots = Vec::with_capacity(m + 1);
    knots.push(0.0);
    for i in 0..edges {
        knots.push(knots.last().unwrap() + edge(i));
    }
    if closed {
        let xs: Vec<f64> = points.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.y).collect();
        let total = knots[m];
        let (sx, sy) = (CubicSpline::periodic(&knots, &xs), CubicSpline::periodic(&knots, &ys));
        return (0..m)
            .map(|k| {
                let s = total * k as f64 / m as f64;
                Vec2::new(sx.eval(s), sy.eval(s))
            })
            .collect();
    }
    let total = knots[m - 1];
    (0..m)
        .map(|k| match k {
            0 => points[0],
            _ if k == m - 1 => points[m - 1],
            _ => lagrange4(&knots, points, total * k as f64 / (m - 1) as f64),
        })
        .collect()
}

fn lagrange4(knots: &[f64], points: &[Vec2], s: f64) -> Vec2 {
    let m = knots.len();
    if m < 4 {
        let i = knots.partition_point(|&x| x <= s).clamp(1, m - 1);
        let u = (s - knots[i - 1]) / (knots[i] - knots[i - 1]);
        return points[i - 1] + u * (points[i] - points[i - 1]);
    }
    let seg = knots.partition_point(|&x| x <= s).saturating_sub(1);
    let start = seg.saturating_sub(1).min(m - 4);
    let idx = start..start + 4;
    let mut out = Vec2::new(0.0, 0.0);
    for j in idx.clone() {
        let w: f64 = idx
            .clone()
            .filter(|&l| l != j)
            .map(|l| (s - knots[l]) / (knots[j] - knots[l]))
            .product();
        out += w * points[j];
    }
    out
}
