//! Profile trajectories, initial value problems and integration options.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::ode::Tolerances;
use crate::types::{Event, EventTag, SolitonSpec};

/// Coordinate chart in which a sample was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// `r` as a function of `h`; `d1 = r'`, `d2 = r''`.
    GraphOverH,
    /// `h` as a function of `r`; `d1 = h'`, `d2 = h''`.
    GraphOverR,
    /// Arc length; `d1 = φ` (tangent `(cos φ, sin φ)` in `(r, h)`), `d2 = dφ/ds`.
    ArcLength,
}

impl Chart {
    pub fn name(&self) -> &'static str {
        match self {
            Chart::GraphOverH => "GraphOverH",
            Chart::GraphOverR => "GraphOverR",
            Chart::ArcLength => "ArcLength",
        }
    }
}

/// One profile sample with derivatives native to its chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub h: f64,
    pub r: f64,
    pub chart: Chart,
    pub d1: f64,
    pub d2: f64,
}

impl ProfilePoint {
    pub fn graph_over_h(h: f64, r: f64, rp: f64, rpp: f64) -> Self {
        Self {
            h,
            r,
            chart: Chart::GraphOverH,
            d1: rp,
            d2: rpp,
        }
    }

    pub fn dr_dh(&self) -> f64 {
        match self.chart {
            Chart::GraphOverH => self.d1,
            Chart::GraphOverR => 1.0 / self.d1,
            Chart::ArcLength => self.d1.cos() / self.d1.sin(),
        }
    }

    pub fn d2r_dh2(&self) -> f64 {
        match self.chart {
            Chart::GraphOverH => self.d2,
            Chart::GraphOverR => -self.d2 / self.d1.powi(3),
            Chart::ArcLength => -self.d2 / self.d1.sin().powi(3),
        }
    }

    pub fn dh_dr(&self) -> f64 {
        match self.chart {
            Chart::GraphOverH => 1.0 / self.d1,
            Chart::GraphOverR => self.d1,
            Chart::ArcLength => self.d1.sin() / self.d1.cos(),
        }
    }

    /// Velocity and acceleration `((ṙ, ḣ), (r̈, ḧ))` in the chart parameter.
    pub fn kinematics(&self) -> ((f64, f64), (f64, f64)) {
        match self.chart {
            Chart::GraphOverH => ((self.d1, 1.0), (self.d2, 0.0)),
            Chart::GraphOverR => ((1.0, self.d1), (0.0, self.d2)),
            Chart::ArcLength => {
                let (s, c) = self.d1.sin_cos();
                ((c, s), (-s * self.d2, c * self.d2))
            }
        }
    }
}

/// Maximal contiguous run of samples `[start, end]` in one chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartInterval {
    pub chart: Chart,
    pub start: usize,
    pub end: usize,
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    SpanReached,
    AxisApproach,
    DerivativeBlowUp,
    AsymptoteDetected,
    NearAxis,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileTrajectory {
    pub spec: SolitonSpec,
    pub points: Vec<ProfilePoint>,
    pub events: Vec<Event>,
    pub chart_log: Vec<ChartInterval>,
    pub termination: Termination,
}

impl ProfileTrajectory {
    /// Wraps externally produced samples (e.g. analytic profiles).
    pub fn from_points(spec: SolitonSpec, points: Vec<ProfilePoint>) -> Result<Self> {
        if spec.rotational_params().is_none() {
            return Err(SolitonError::InvalidParameter(
                "profile trajectories need a rotational spec".into(),
            ));
        }
        let chart_log = chart_log_of(&points);
        Ok(Self {
            spec,
            points,
            events: Vec::new(),
            chart_log,
            termination: Termination::SpanReached,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.rotational_params().map(|p| p.0).unwrap_or(2)
    }

    pub fn c_const(&self) -> f64 {
        self.spec.rotational_params().map(|p| p.1).unwrap_or(f64::NAN)
    }

    pub fn events_tagged(&self, tag: EventTag) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.tag == tag)
    }

    pub fn r_max(&self) -> f64 {
        self.points.iter().map(|p| p.r).fold(0.0, f64::max)
    }

    /// Reverses sample order (derivatives are chart-native and unchanged).
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        let mut events = self.events.clone();
        events.reverse();
        Self {
            spec: self.spec.clone(),
            chart_log: chart_log_of(&points),
            points,
            events,
            termination: self.termination,
        }
    }

    /// `r(h)` by quintic Hermite interpolation inside a graph-over-h run
    /// that brackets `h`.
    pub fn interpolate_r(&self, h: f64) -> Option<f64> {
        for iv in &self.chart_log {
            if iv.chart != Chart::GraphOverH {
                continue;
            }
            for i in iv.start..iv.end {
                let (a, b) = (&self.points[i], &self.points[i + 1]);
                let (lo, hi) = if a.h <= b.h { (a.h, b.h) } else { (b.h, a.h) };
                if h >= lo && h <= hi && hi > lo {
                    return Some(quintic_hermite(
                        a.h, a.r, a.d1, a.d2, b.h, b.r, b.d1, b.d2, h,
                    ));
                }
            }
        }
        None
    }
}

pub(crate) fn chart_log_of(points: &[ProfilePoint]) -> Vec<ChartInterval> {
    let mut log: Vec<ChartInterval> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match log.last_mut() {
            Some(iv) if iv.chart == p.chart => iv.end = i,
            _ => log.push(ChartInterval {
                chart: p.chart,
                start: i,
                end: i,
            }),
        }
    }
    log
}

#[allow(clippy::too_many_arguments)]
fn quintic_hermite(
    x0: f64,
    y0: f64,
    d0: f64,
    s0: f64,
    x1: f64,
    y1: f64,
    d1: f64,
    s1: f64,
    x: f64,
) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h3 = 0.5 * (t3 - 2.0 * t4 + t5);
    let h4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    h0 * y0 + h1 * h * d0 + h2 * h * h * s0 + h3 * h * h * s1 + h4 * h * d1 + h5 * y1
}

/// How the integration is started.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StartChart {
    /// `r(h0) = r0`, `r'(h0) = r0p`.
    GraphOverH { h0: f64, r0: f64, r0p: f64 },
    /// From the axis point `(h0, 0)` with a horizontal tangent, `h0 < 0`.
    AxisShot { h0: f64 },
    /// `r(0) = r0`, `r'(0) = 0`.
    SymmetricCylinder { r0: f64 },
}

/// Integration stops once `|h|` or `r` exceed these extents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub max_abs_h: f64,
    pub max_r: f64,
}

impl Span {
    pub fn new(max_abs_h: f64, max_r: f64) -> Result<Self> {
        if !(max_abs_h > 0.0 && max_r > 0.0) {
            return Err(SolitonError::InvalidParameter(
                "span extents must be positive".into(),
            ));
        }
        Ok(Self { max_abs_h, max_r })
    }

    pub fn uniform(extent: f64) -> Result<Self> {
        Self::new(extent, extent)
    }

    /// `100 * max(|h0|, r0)` in both directions.
    pub fn default_for(start: &StartChart) -> Self {
        let extent = 100.0 * start.scale();
        Self {
            max_abs_h: extent,
            max_r: extent,
        }
    }
}

impl StartChart {
    pub fn scale(&self) -> f64 {
        match *self {
            StartChart::GraphOverH { h0, r0, .. } => h0.abs().max(r0),
            StartChart::AxisShot { h0 } => h0.abs(),
            StartChart::SymmetricCylinder { r0 } => r0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileTolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub chart_switch_slope: f64,
}

impl Default for ProfileTolerances {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            chart_switch_slope: 10.0,
        }
    }
}

impl ProfileTolerances {
    pub fn ode(&self) -> Tolerances {
        Tolerances {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileIVP {
    pub spec: SolitonSpec,
    pub start: StartChart,
    pub span: Span,
    pub tolerances: ProfileTolerances,
}

impl ProfileIVP {
    pub fn new(spec: SolitonSpec, start: StartChart, span: Span) -> Result<Self> {
        if spec.rotational_params().is_none() {
            return Err(SolitonError::InvalidParameter(
                "profile IVPs need a rotational spec".into(),
            ));
        }
        match start {
            StartChart::GraphOverH { h0, r0, r0p } => {
                if !(h0.is_finite() && r0p.is_finite()) {
                    return Err(SolitonError::InvalidParameter(
                        "initial data must be finite".into(),
                    ));
                }
                if !(r0 > 0.0) {
                    return Err(SolitonError::NonpositiveRadius { h: h0, r: r0 });
                }
            }
            StartChart::AxisShot { h0 } => {
                if !(h0 < 0.0 && h0.is_finite()) {
                    return Err(SolitonError::InvalidParameter(format!(
                        "axis shots start below the origin, need h0 < 0, got {h0}"
                    )));
                }
            }
            StartChart::SymmetricCylinder { r0 } => {
                if !(r0 > 0.0 && r0.is_finite()) {
                    return Err(SolitonError::NonpositiveRadius { h: 0.0, r: r0 });
                }
            }
        }
        Ok(Self {
            spec,
            start,
            span,
            tolerances: ProfileTolerances::default(),
        })
    }

    pub fn with_tolerances(mut self, tolerances: ProfileTolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn n(&self) -> usize {
        self.spec.rotational_params().unwrap().0
    }

    pub fn c_const(&self) -> f64 {
        self.spec.rotational_params().unwrap().1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    IncreasingH,
    DecreasingH,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::IncreasingH => 1.0,
            Direction::DecreasingH => -1.0,
        }
    }
}

/// Knobs beyond the IVP itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOptions {
    /// Stop as soon as [`estimate_asymptote`](super::estimate_asymptote) succeeds.
    pub stop_on_asymptote: bool,
    /// Stop once `r < fraction * r_max` while `r' < 0` after an inflection.
    pub near_axis_fraction: Option<f64>,
    /// Switch the graph-over-h chart to log variables with a linearly
    /// implicit stepper once `|h| >= ratio * r` (moving outwards).
    pub stiff_tail_ratio: Option<f64>,
    /// Largest step in the chart variable; default `max_abs_h / 100`.
    pub max_step: Option<f64>,
    pub max_steps: usize,
    /// Radius below which the profile is considered to have reached the axis.
    pub axis_eps: f64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            stop_on_asymptote: false,
            near_axis_fraction: None,
            stiff_tail_ratio: None,
            max_step: None,
            max_steps: 2_000_000,
            axis_eps: 1e-6,
        }
    }
}
