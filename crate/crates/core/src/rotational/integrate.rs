//! Adaptive integration of profile curves with chart switching and events.

use super::asymptote::{estimate_asymptote, DEFAULT_TAIL_FRACTION};
use super::rhs::{profile_rhs_arclength, profile_rhs_h_of_r, profile_rhs_r_of_h};
use super::trajectory::{
    Chart, ChartInterval, Direction, IntegrationOptions, ProfileIVP, ProfilePoint,
    ProfileTrajectory, Span, StartChart, Termination,
};
use crate::error::{Result, SolitonError};
use crate::ode::{dopri5_step, ros2_step, StepController, Tolerances, TrialStep};
use crate::types::{Event, EventTag};

/// Radius at which axis shots leave the axis.
pub const AXIS_OFFSET: f64 = 1e-6;
const INFLECTION_TOL: f64 = 1e-10;
const SUPPORT_DEGENERACY: f64 = 1e-10;
const NOISE_FACTOR: f64 = 100.0;
const ARCLENGTH_MIN_STEPS: usize = 10;
const LOG_STORE_EVERY: f64 = 5e-3;
/// Inward approaches to the axis end once `r < AXIS_LAYER * r_max`: closer
/// in, the `(n-1)/r` term amplifies local errors like `r^{1-n}`.
pub const AXIS_LAYER: f64 = 1e-2;

/// Stepping mode. `LogTail` is the graph-over-h chart in the variables
/// `τ = ln|h|`, `w = ln(r/|h|)`, `u = h r'/r`, stepped implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    OverH,
    OverR,
    Arc,
    LogTail,
}

#[derive(Debug, Clone, Copy)]
struct State {
    mode: Mode,
    x: f64,
    y: [f64; 3],
    f: [f64; 3],
    /// Sign of the step in the chart variable.
    dir: f64,
    /// `du/dτ` over the last step (`LogTail` only).
    du: f64,
}

struct Engine {
    n: usize,
    c: f64,
    tol: Tolerances,
    log_tol: Tolerances,
    slope: f64,
    span: Span,
    max_step: f64,
    /// Sign of `h` while in `LogTail`.
    sigma: f64,
}

impl Engine {
    fn rhs(&self, mode: Mode, x: f64, y: &[f64; 3]) -> Result<[f64; 3]> {
        let (n, c) = (self.n, self.c);
        match mode {
            Mode::OverH => Ok([y[1], profile_rhs_r_of_h(n, c, x, y[0], y[1])?, 0.0]),
            Mode::OverR => Ok([y[1], profile_rhs_h_of_r(n, c, x, y[0], y[1])?, 0.0]),
            Mode::Arc => {
                let (s, co) = y[2].sin_cos();
                Ok([co, s, profile_rhs_arclength(n, c, y[0], y[1], y[2])?])
            }
            Mode::LogTail => self.log_rhs(y),
        }
    }

    fn log_rhs(&self, y: &[f64; 3]) -> Result<[f64; 3]> {
        let (w, u) = (y[0], y[1]);
        let eps = (2.0 * w).exp();
        let one_minus_u = 1.0 - u;
        if one_minus_u == 0.0 || !eps.is_finite() {
            return Err(SolitonError::SupportDegenerate {
                h: f64::NAN,
                r: f64::NAN,
            });
        }
        let p = 1.0 + u * u * eps;
        let g = (self.n as f64 - 1.0) - p / (self.c * one_minus_u);
        Ok([u - 1.0, u - u * u + p * g / eps, 0.0])
    }

    /// `(h, r)` of a state.
    fn hr(&self, mode: Mode, x: f64, y: &[f64; 3]) -> (f64, f64) {
        match mode {
            Mode::OverH => (x, y[0]),
            Mode::OverR => (y[0], x),
            Mode::Arc => (y[1], y[0]),
            Mode::LogTail => {
                let ah = x.exp();
                (self.sigma * ah, ah * y[0].exp())
            }
        }
    }

    fn point(&self, st: &State) -> ProfilePoint {
        let (h, r) = self.hr(st.mode, st.x, &st.y);
        match st.mode {
            Mode::OverH => ProfilePoint::graph_over_h(h, r, st.y[1], st.f[1]),
            Mode::OverR => ProfilePoint {
                h,
                r,
                chart: Chart::GraphOverR,
                d1: st.y[1],
                d2: st.f[1],
            },
            Mode::Arc => ProfilePoint {
                h,
                r,
                chart: Chart::ArcLength,
                d1: st.y[2],
                d2: st.f[2],
            },
            Mode::LogTail => {
                // r'' = (r/h^2)(u_τ + u^2 - u); the right-hand side value of
                // u_τ is pure cancellation noise this far out, the step
                // difference is not
                let u = st.y[1];
                ProfilePoint::graph_over_h(h, r, u * r / h, r / (h * h) * (st.du + u * u - u))
            }
        }
    }

    /// Signed curvature of the profile in the `(h, r)` plane, oriented by
    /// the direction of travel. Inflections are its sign changes.
    fn travel_curvature(&self, st: &State) -> f64 {
        match st.mode {
            Mode::OverH => st.dir * st.f[1],
            Mode::OverR => -st.dir * st.f[1],
            Mode::Arc => -st.f[2],
            Mode::LogTail => self.sigma * self.point(st).d2,
        }
    }

    /// Sign of [`Self::travel_curvature`], or 0 when its magnitude is below
    /// the noise left by cancelling terms of the right-hand side at the
    /// working tolerance.
    fn curvature_sign(&self, st: &State) -> i8 {
        let nm1 = self.n as f64 - 1.0;
        let (value, noise) = match st.mode {
            Mode::OverH | Mode::OverR => {
                let (h, r) = self.hr(st.mode, st.x, &st.y);
                let d = st.y[1];
                let q = 1.0 + d * d;
                let support = match st.mode {
                    Mode::OverH => r - h * d,
                    _ => r * d - h,
                };
                let terms = q * (nm1 * d.abs().max(1.0) / r + q / (self.c * support.abs()));
                (self.travel_curvature(st), self.tol.rel_tol * terms)
            }
            Mode::Arc => {
                let (h, r) = self.hr(st.mode, st.x, &st.y);
                let (s, c) = st.y[2].sin_cos();
                let terms = nm1 * s.abs() / r + 1.0 / (self.c * (r * s - h * c).abs());
                (self.travel_curvature(st), self.tol.rel_tol * terms)
            }
            Mode::LogTail => {
                let u = st.y[1];
                let value = self.sigma * (st.du + u * u - u);
                (value, self.log_tol.rel_tol * (1.0 + u.abs()) * LOG_STORE_EVERY.recip())
            }
        };
        if value.abs() <= NOISE_FACTOR * noise {
            0
        } else if value > 0.0 {
            1
        } else {
            -1
        }
    }

    fn trial(&self, st: &State, step: f64) -> Result<TrialStep<3>> {
        match st.mode {
            Mode::LogTail => {
                let mut f = |y: &[f64; 3]| self.log_rhs(y);
                ros2_step(&mut f, &st.y, &st.f, step, self.log_tol)
            }
            mode => {
                let mut f = |x: f64, y: &[f64; 3]| self.rhs(mode, x, y);
                dopri5_step(&mut f, st.x, &st.y, &st.f, step, self.tol)
            }
        }
    }

    fn advance(&self, st: &State, step: f64, t: &TrialStep<3>) -> State {
        let du = match st.mode {
            Mode::LogTail if step != 0.0 => (t.y[1] - st.y[1]) / step,
            _ => 0.0,
        };
        State {
            x: st.x + step,
            y: t.y,
            f: t.f_end,
            du,
            ..*st
        }
    }

    fn with_mode(&self, mode: Mode, x: f64, y: [f64; 3], dir: f64) -> Result<State> {
        let f = self.rhs(mode, x, &y)?;
        Ok(State { mode, x, y, f, dir, du: 0.0 })
    }

    /// Chart change demanded by the slope at `st`, if any.
    fn switch_target(&self, st: &State, steps_in_mode: usize) -> Result<Option<State>> {
        let (h, r) = self.hr(st.mode, st.x, &st.y);
        match st.mode {
            Mode::OverH if st.y[1].abs() > self.slope => {
                let rp = st.y[1];
                Ok(Some(self.with_mode(
                    Mode::OverR,
                    r,
                    [h, 1.0 / rp, 0.0],
                    st.dir * rp.signum(),
                )?))
            }
            Mode::OverR if st.y[1].abs() > self.slope => {
                let hp = st.y[1];
                Ok(Some(self.with_mode(
                    Mode::OverH,
                    h,
                    [r, 1.0 / hp, 0.0],
                    st.dir * hp.signum(),
                )?))
            }
            Mode::Arc if steps_in_mode >= ARCLENGTH_MIN_STEPS => {
                let (s, c) = st.y[2].sin_cos();
                if (c / s).abs() <= 0.5 * self.slope {
                    Ok(Some(self.with_mode(Mode::OverH, h, [r, c / s, 0.0], s.signum())?))
                } else if (s / c).abs() <= 0.5 * self.slope {
                    Ok(Some(self.with_mode(Mode::OverR, r, [h, s / c, 0.0], c.signum())?))
                } else {
                    Ok(None)
                }
            }
            _ => Ok(None),
        }
    }

    fn to_arclength(&self, st: &State) -> Result<State> {
        let (h, r) = self.hr(st.mode, st.x, &st.y);
        let (dr, dh) = match st.mode {
            Mode::OverH => (st.dir * st.y[1], st.dir),
            Mode::OverR => (st.dir, st.dir * st.y[1]),
            _ => unreachable!("only graph charts fall back to arc length"),
        };
        self.with_mode(Mode::Arc, 0.0, [r, h, dh.atan2(dr)], 1.0)
    }

    fn to_log_tail(&mut self, st: &State) -> Result<State> {
        let (h, r) = (st.x, st.y[0]);
        self.sigma = h.signum();
        let u = h * st.y[1] / r;
        let y = [(r / h.abs()).ln(), u, 0.0];
        let f = self.log_rhs(&y)?;
        Ok(State {
            mode: Mode::LogTail,
            x: h.abs().ln(),
            y,
            f,
            dir: 1.0,
            du: 0.0,
        })
    }

    /// Bounds the step by the span, the axis and the chart's natural scale.
    fn limit_step(&self, st: &State, step: f64) -> f64 {
        let mut mag = step.abs().min(self.max_step);
        match st.mode {
            Mode::OverH => {
                let target = st.dir * self.span.max_abs_h;
                mag = mag.min((target - st.x).abs());
            }
            Mode::OverR => {
                // stages must stay off the axis; the cap also sets geometric
                // growth of steps when leaving the axis
                mag = mag.min(if st.dir < 0.0 { 0.5 * st.x } else { st.x });
                if st.dir > 0.0 {
                    mag = mag.min(self.span.max_r - st.x);
                }
            }
            Mode::Arc => {}
            Mode::LogTail => {
                mag = mag.min(0.5).min(self.span.max_abs_h.ln() - st.x);
            }
        }
        st.dir * mag.max(0.0)
    }

    fn min_step(&self, st: &State) -> f64 {
        1e-14 * st.x.abs().max(1.0)
    }
}

struct Recorder {
    points: Vec<ProfilePoint>,
    events: Vec<Event>,
    chart_log: Vec<ChartInterval>,
}

impl Recorder {
    fn push(&mut self, p: ProfilePoint) {
        let i = self.points.len();
        match self.chart_log.last_mut() {
            Some(iv) if iv.chart == p.chart => iv.end = i,
            _ => self.chart_log.push(ChartInterval {
                chart: p.chart,
                start: i,
                end: i,
            }),
        }
        self.points.push(p);
    }

    fn event(&mut self, tag: EventTag, h: f64, r: f64, data: Option<f64>) {
        self.events.push(Event::new(tag, h, r, data));
    }
}

/// Integrates with default [`IntegrationOptions`].
pub fn integrate_profile(ivp: &ProfileIVP, direction: Direction) -> Result<ProfileTrajectory> {
    integrate_profile_with(ivp, direction, &IntegrationOptions::default())
}

pub fn integrate_profile_with(
    ivp: &ProfileIVP,
    direction: Direction,
    opts: &IntegrationOptions,
) -> Result<ProfileTrajectory> {
    let (n, c) = ivp.spec.rotational_params().ok_or_else(|| {
        SolitonError::InvalidParameter("profile IVPs need a rotational spec".into())
    })?;
    let tol = ivp.tolerances.ode();
    let mut eng = Engine {
        n,
        c,
        tol,
        log_tol: Tolerances {
            rel_tol: tol.rel_tol.max(1e-9),
            abs_tol: tol.rel_tol.max(1e-9),
        },
        slope: ivp.tolerances.chart_switch_slope,
        span: ivp.span,
        max_step: opts.max_step.unwrap_or(ivp.span.max_abs_h / 100.0),
        sigma: 1.0,
    };
    let dir = direction.sign();

    let mut st = match ivp.start {
        StartChart::GraphOverH { h0, r0, r0p } => {
            eng.with_mode(Mode::OverH, h0, [r0, r0p, 0.0], dir)?
        }
        StartChart::SymmetricCylinder { r0 } => {
            eng.with_mode(Mode::OverH, 0.0, [r0, 0.0, 0.0], dir)?
        }
        StartChart::AxisShot { h0 } => {
            if direction != Direction::IncreasingH {
                return Err(SolitonError::InvalidParameter(
                    "axis shots integrate away from the axis towards increasing h".into(),
                ));
            }
            let k = -1.0 / (n as f64 * c * h0);
            let re = AXIS_OFFSET;
            eng.with_mode(
                Mode::OverR,
                re,
                [h0 + 0.5 * k * re * re, k * re, 0.0],
                1.0,
            )?
        }
    };

    let mut rec = Recorder {
        points: Vec::new(),
        events: Vec::new(),
        chart_log: Vec::new(),
    };
    let mut steps_in_mode = 0usize;
    if let Some(next) = eng.switch_target(&st, steps_in_mode)? {
        st = next;
    }
    rec.push(eng.point(&st));

    let scale = {
        let (h, r) = eng.hr(st.mode, st.x, &st.y);
        h.abs().max(r)
    };
    let mut step = st.dir
        * match st.mode {
            Mode::OverR => 0.1 * st.x,
            _ => 1e-3 * scale,
        };
    let mut ctl = StepController::default();
    let mut accepted = 0usize;
    let mut r_max = rec.points[0].r;
    let mut inflections = 0usize;
    let mut last_sign: Option<i8> = None;
    let mut last_stored_tau = f64::NEG_INFINITY;
    let mut termination = Termination::StepLimit;

    while accepted < opts.max_steps {
        let (h_now, r_now) = eng.hr(st.mode, st.x, &st.y);
        if h_now.abs() >= eng.span.max_abs_h * (1.0 - 1e-12) || r_now >= eng.span.max_r {
            rec.event(EventTag::MaxSpanReached, h_now, r_now, None);
            termination = Termination::SpanReached;
            break;
        }

        let mut trial_step = eng.limit_step(&st, step);
        if trial_step.abs() < eng.min_step(&st) && st.mode != Mode::OverR {
            trial_step = st.dir * eng.min_step(&st);
        }
        let outcome = eng.trial(&st, trial_step);
        let t = match outcome {
            Ok(t) if t.err.is_finite() && t.y.iter().all(|v| v.is_finite()) => t,
            Ok(_) | Err(SolitonError::NonpositiveRadius { .. })
            | Err(SolitonError::SupportDegenerate { .. }) => {
                if trial_step.abs() <= eng.min_step(&st) {
                    match outcome {
                        Err(e) => return Err(e),
                        Ok(_) => {
                            return Err(SolitonError::StepUnderflow {
                                h: h_now,
                                r: r_now,
                                step: trial_step,
                            })
                        }
                    }
                }
                step = 0.25 * trial_step;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (ok, fac) = ctl.judge(t.err);
        if !ok {
            step = trial_step * fac;
            if step.abs() < eng.min_step(&st) {
                match st.mode {
                    Mode::OverH | Mode::OverR => {
                        st = eng.to_arclength(&st)?;
                        steps_in_mode = 0;
                        step = 1e-3 * scale;
                        rec.event(EventTag::ChartSwitch, h_now, r_now, None);
                        continue;
                    }
                    _ => {
                        return Err(SolitonError::StepUnderflow {
                            h: h_now,
                            r: r_now,
                            step,
                        })
                    }
                }
            }
            continue;
        }

        let new = eng.advance(&st, trial_step, &t);
        let (h_new, r_new) = eng.hr(new.mode, new.x, &new.y);
        if !(r_new > 0.0) {
            step = 0.25 * trial_step;
            continue;
        }
        accepted += 1;
        steps_in_mode += 1;

        // inflection: change of the strict curvature sign, ignoring values
        // inside the noise band
        let s_old = eng.curvature_sign(&st);
        let s_new = eng.curvature_sign(&new);
        if s_new != 0 {
            if let Some(prev) = last_sign.filter(|&p| p != s_new) {
                let mut loc = new;
                if s_old == prev {
                    let (mut lo, mut hi) = (0.0, trial_step);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        let sub = eng.advance(&st, mid, &eng.trial(&st, mid)?);
                        if eng.curvature_sign(&sub) == prev {
                            lo = mid;
                        } else {
                            hi = mid;
                            loc = sub;
                        }
                        let (ha, _) = eng.hr(st.mode, st.x + lo, &eng.trial(&st, lo)?.y);
                        let (hb, _) = eng.hr(st.mode, loc.x, &loc.y);
                        if (hb - ha).abs() <= INFLECTION_TOL.max(4.0 * f64::EPSILON * hb.abs())
                            || (hi - lo).abs() <= f64::EPSILON * st.x.abs().max(1.0)
                        {
                            break;
                        }
                    }
                }
                let (hi_h, hi_r) = eng.hr(loc.mode, loc.x, &loc.y);
                rec.event(EventTag::Inflection, hi_h, hi_r, Some(hi_h));
                inflections += 1;
            }
            last_sign = Some(s_new);
        }

        st = new;
        step = trial_step * fac;
        r_max = r_max.max(r_new);

        let store = match st.mode {
            Mode::LogTail => {
                if st.x - last_stored_tau >= LOG_STORE_EVERY {
                    last_stored_tau = st.x;
                    true
                } else {
                    false
                }
            }
            _ => true,
        };
        if store {
            rec.push(eng.point(&st));
        }

        let inward_layer = st.mode == Mode::OverR && st.dir < 0.0 && r_new < AXIS_LAYER * r_max;
        if (r_new < opts.axis_eps && r_new < r_now) || inward_layer {
            if !store {
                rec.push(eng.point(&st));
            }
            // axis crossing of the regular branch h = h_a + k r^2 / 2 with
            // k = -1/(n C h_a); uses positions only, not the amplified slope
            let crossing = (st.mode == Mode::OverR).then(|| {
                let k = -1.0 / (eng.n as f64 * eng.c * h_new);
                h_new - 0.5 * k * r_new * r_new
            });
            rec.event(EventTag::AxisApproach, h_new, r_new, crossing);
            termination = Termination::AxisApproach;
            break;
        }

        let p = eng.point(&st);
        let ((rd, hd), _) = p.kinematics();
        let support = (-hd * p.r + rd * p.h).abs() / rd.hypot(hd);
        if support <= SUPPORT_DEGENERACY * p.r {
            if !store {
                rec.push(p);
            }
            rec.event(EventTag::DerivativeBlowUp, h_new, r_new, Some(support));
            termination = Termination::DerivativeBlowUp;
            break;
        }

        if let Some(frac) = opts.near_axis_fraction {
            if inflections > 0 && p.chart == Chart::GraphOverH && p.d1 < 0.0 && r_new < frac * r_max {
                if !store {
                    rec.push(p);
                }
                termination = Termination::NearAxis;
                break;
            }
        }

        if opts.stop_on_asymptote
            && accepted % 25 == 0
            && p.chart == Chart::GraphOverH
            && p.d1.abs() < 1e-6
        {
            let partial = ProfileTrajectory {
                spec: ivp.spec.clone(),
                points: std::mem::take(&mut rec.points),
                events: Vec::new(),
                chart_log: std::mem::take(&mut rec.chart_log),
                termination,
            };
            let est = estimate_asymptote(&partial, DEFAULT_TAIL_FRACTION);
            rec.points = partial.points;
            rec.chart_log = partial.chart_log;
            if let Some(v) = est {
                if !store {
                    rec.push(p);
                }
                rec.event(EventTag::AsymptoteDetected, h_new, r_new, Some(v));
                termination = Termination::AsymptoteDetected;
                break;
            }
        }

        if let Some(next) = eng.switch_target(&st, steps_in_mode)? {
            let (hs, rs) = eng.hr(st.mode, st.x, &st.y);
            let slope_value = st.y[1];
            st = next;
            steps_in_mode = 0;
            step = st.dir * step.abs().min(match st.mode {
                Mode::OverR => 0.1 * st.x,
                _ => 1e-2 * hs.abs().max(rs),
            });
            ctl = StepController::default();
            rec.event(EventTag::ChartSwitch, hs, rs, Some(slope_value));
        }

        if let Some(ratio) = opts.stiff_tail_ratio {
            if st.mode == Mode::OverH && st.x * st.dir > 0.0 && st.x.abs() >= ratio * st.y[0] {
                st = eng.to_log_tail(&st)?;
                last_stored_tau = st.x;
                step = 1e-2;
                ctl = StepController::default();
            }
        }
    }

    if rec.points.last().map(|p| p.h) != Some(eng.point(&st).h) {
        rec.push(eng.point(&st));
    }
    let mut traj = ProfileTrajectory {
        spec: ivp.spec.clone(),
        points: rec.points,
        events: rec.events,
        chart_log: rec.chart_log,
        termination,
    };
    if !traj.events.iter().any(|e| e.tag == EventTag::AsymptoteDetected) {
        if let Some(v) = estimate_asymptote(&traj, DEFAULT_TAIL_FRACTION) {
            let last = *traj.points.last().unwrap();
            traj.events
                .push(Event::new(EventTag::AsymptoteDetected, last.h, last.r, Some(v)));
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::SolitonSpec;

    fn ivp(n: usize, c: f64, start: StartChart, extent: f64) -> ProfileIVP {
        ProfileIVP::new(
            SolitonSpec::rotational(n, c).unwrap(),
            start,
            Span::uniform(extent).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn cylinder_stays_constant_without_events() {
        for n in 2..5 {
            let c = 1.0 / (n as f64 - 1.0);
            let p = ivp(n, c, StartChart::SymmetricCylinder { r0: 1.3 }, 50.0);
            let t = integrate_profile(&p, Direction::IncreasingH).unwrap();
            assert!(t.points.iter().all(|q| q.r == 1.3));
            assert!(t
                .events
                .iter()
                .all(|e| matches!(e.tag, EventTag::MaxSpanReached | EventTag::AsymptoteDetected)));
            assert_eq!(t.events_tagged(EventTag::Inflection).count(), 0);
        }
    }

    #[test]
    fn sphere_reaches_axis_along_the_circle() {
        let rr = 2.0;
        let p = ivp(2, 0.5, StartChart::GraphOverH { h0: 0.0, r0: rr, r0p: 0.0 }, 100.0);
        let t = integrate_profile(&p, Direction::IncreasingH).unwrap();
        assert_eq!(t.termination, Termination::AxisApproach);
        let axis = t.events_tagged(EventTag::AxisApproach).next().unwrap();
        assert!((axis.data.unwrap() - rr).abs() < 1e-8, "{:?}", axis);
        assert!(t.events_tagged(EventTag::ChartSwitch).count() == 1);
        for q in &t.points {
            assert!((q.h.hypot(q.r) - rr).abs() < 1e-8);
        }
        assert_eq!(t.events_tagged(EventTag::Inflection).count(), 0);
    }

    #[test]
    fn sphere_backwards_is_reflected() {
        let p = ivp(3, 1.0 / 3.0, StartChart::SymmetricCylinder { r0: 1.0 }, 100.0);
        let t = integrate_profile(&p, Direction::DecreasingH).unwrap();
        assert_eq!(t.termination, Termination::AxisApproach);
        let axis = t.events_tagged(EventTag::AxisApproach).next().unwrap();
        assert!((axis.data.unwrap() + 1.0).abs() < 1e-8, "{:?}", axis);
        assert_eq!(t.events_tagged(EventTag::Inflection).count(), 0);
    }

    #[test]
    fn axis_shot_rejects_downward_direction() {
        let p = ivp(2, 1.0, StartChart::AxisShot { h0: -1.0 }, 100.0);
        assert!(integrate_profile(&p, Direction::DecreasingH).is_err());
    }

    #[test]
    fn bottle_has_one_inflection_and_two_asymptotes() {
        let p = ivp(2, 1.0, StartChart::GraphOverH { h0: -1.0, r0: 1.0, r0p: 0.5 }, 100.0);
        let opts = IntegrationOptions {
            stop_on_asymptote: true,
            ..Default::default()
        };
        let up = integrate_profile_with(&p, Direction::IncreasingH, &opts).unwrap();
        let down = integrate_profile_with(&p, Direction::DecreasingH, &opts).unwrap();
        let infl: Vec<_> = up.events_tagged(EventTag::Inflection).collect();
        assert_eq!(infl.len(), 1);
        assert!(infl[0].h > -1.0 && infl[0].h < 0.0);
        assert_eq!(down.events_tagged(EventTag::Inflection).count(), 0);
        assert_eq!(up.termination, Termination::AsymptoteDetected);
        assert_eq!(down.termination, Termination::AsymptoteDetected);
    }
}
