//! `bottle`, `shoot` and `classify`: rotational profile runs.

use clap::{Args, ValueEnum};
use imcf_solitons::rotational::{
    build_infinite_bottle_with, classify_hypercylinder_expander_with,
    classify_hyperplane_expander_with, shoot_from_axis_with, soliton_residual_rotational,
    IntegrationOptions, ProfileTolerances, ProfileTrajectory, Span, StartChart, Termination,
};
use imcf_solitons::{Event, EventTag, Regime};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{parse_sweep, sweep, Ctx};
use crate::config::{self, Format, Output};
use crate::error::{classify, CliError};
use crate::output::{self, emit, num, Csv, Marker, Plot, Series};

const FORMATS: [Format; 3] = [Format::Csv, Format::Json, Format::Svg];

fn tolerances(rel_tol: Option<f64>, abs_tol: Option<f64>) -> ProfileTolerances {
    let d = ProfileTolerances::default();
    ProfileTolerances {
        rel_tol: rel_tol.unwrap_or(d.rel_tol),
        abs_tol: abs_tol.unwrap_or(d.abs_tol),
        ..d
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct BottleArgs {
    /// Hypersurface dimension.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h0: Option<f64>,
    /// Initial slope r'(h0).
    #[arg(long, allow_negative_numbers = true)]
    pub r0p: Option<f64>,
    /// Largest |h| and r to integrate to.
    #[arg(long)]
    pub span: Option<f64>,
    #[arg(long)]
    #[serde(rename = "rel-tol")]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    #[serde(rename = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Sweep r0' over start:stop:count.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ShootArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Soliton constant C.
    #[arg(long = "C")]
    #[serde(rename = "C")]
    pub c_const: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h0: Option<f64>,
    #[arg(long)]
    pub span: Option<f64>,
    #[arg(long)]
    #[serde(rename = "rel-tol")]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    #[serde(rename = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Sweep C over start:stop:count.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Axis shot from (h0, 0).
    Plane,
    /// Symmetric start r(0) = r0, r'(0) = 0.
    Cylinder,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "C")]
    #[serde(rename = "C")]
    pub c_const: Option<f64>,
    /// Axis height (plane mode).
    #[arg(long, allow_negative_numbers = true)]
    pub h0: Option<f64>,
    /// Radius at h = 0 (cylinder mode).
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long)]
    pub span: Option<f64>,
    #[arg(long)]
    #[serde(rename = "rel-tol")]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    #[serde(rename = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Sweep C over start:stop:count.
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a Value,
    regime: Option<&'static str>,
    h1: Option<f64>,
    r_bot: Option<f64>,
    r_top: Option<f64>,
    /// The full regime, re-parseable on its own.
    regime_detail: Option<Regime>,
    events: &'a [Event],
    residual_max: f64,
    divergence_residual_max: f64,
    termination: Termination,
    samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    h2_numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h2_closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    barrier_violation: Option<f64>,
}

struct Outcome {
    trajectory: ProfileTrajectory,
    regime: Option<Regime>,
    h2: Option<(f64, f64)>,
    barrier_violation: Option<f64>,
    reflect: bool,
}

fn limits(regime: Option<Regime>) -> (Option<f64>, Option<f64>) {
    match regime {
        Some(Regime::BottleBetweenCylinders { r_bot, r_top, .. }) => (Some(r_bot), Some(r_top)),
        Some(Regime::ConvergesToCylinder { r_top }) => (None, Some(r_top)),
        _ => (None, None),
    }
}

fn write(out: &Output, echo: &Value, title: &str, o: &Outcome) -> Result<Vec<String>, CliError> {
    let traj = &o.trajectory;
    let residual = soliton_residual_rotational(traj).map_err(|e| classify(e, "profile residual"))?;
    let (r_bot, r_top) = limits(o.regime);
    let mut written = Vec::new();
    written.extend(emit(out, Format::Csv, || {
        let mut csv = Csv::new(echo, &["h", "r", "dr_dh", "d2r_dh2", "chart"]);
        for p in &traj.points {
            csv.row(&[num(p.h), num(p.r), num(p.dr_dh()), num(p.d2r_dh2()), p.chart.name().into()]);
        }
        csv.finish()
    })?);
    written.extend(emit(out, Format::Json, || {
        output::json(&Report {
            config: echo,
            regime: o.regime.map(|r| r.name()),
            h1: o.regime.and_then(|r| r.h1()),
            r_bot,
            r_top,
            regime_detail: o.regime,
            events: &traj.events,
            residual_max: residual.ode_max,
            divergence_residual_max: residual.divergence_max,
            termination: traj.termination,
            samples: traj.points.len(),
            h2_numeric: o.h2.map(|h| h.0),
            h2_closed_form: o.h2.map(|h| h.1),
            barrier_violation: o.barrier_violation,
        })
    })?);
    written.extend(emit(out, Format::Svg, || {
        let curve: Vec<(f64, f64)> = traj.points.iter().map(|p| (p.r, p.h)).collect();
        let (lo, hi) = curve
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
        let (lo, hi) = if o.reflect { (-hi, hi) } else { (lo, hi) };
        let mut series = vec![Series::line("profile", "#1f77b4", curve.clone())];
        if o.reflect {
            let mirrored = curve.iter().map(|&(r, h)| (r, -h)).collect();
            series.push(Series::line("reflection", "#7f7f7f", mirrored).dashed());
        }
        for (label, r) in [("r_bot", r_bot), ("r_top", r_top)] {
            if let Some(r) = r {
                series.push(Series::line(label, "#2ca02c", vec![(r, lo), (r, hi)]).dashed());
            }
        }
        let mut markers: Vec<Marker> = traj
            .events_tagged(EventTag::Inflection)
            .map(|e| Marker {
                label: "inflection".into(),
                color: "#d62728",
                at: (e.r, e.h),
            })
            .collect();
        if o.reflect {
            let mirrored: Vec<Marker> = markers
                .iter()
                .map(|m| Marker {
                    at: (m.at.0, -m.at.1),
                    ..m.clone()
                })
                .collect();
            markers.extend(mirrored);
        }
        Plot {
            title: title.into(),
            x_label: "r".into(),
            y_label: "h".into(),
            series,
            markers,
            equal_aspect: false,
        }
        .render(echo)
    })?);
    Ok(written)
}

fn sweep_values(spec: &Option<String>) -> Result<Option<Vec<f64>>, CliError> {
    spec.as_deref().map(parse_sweep).transpose()
}

fn span(extent: Option<f64>) -> Result<Option<Span>, CliError> {
    extent
        .map(Span::uniform)
        .transpose()
        .map_err(|e| classify(e, "span"))
}

#[derive(Debug, Clone, Serialize)]
struct BottleParams {
    n: usize,
    r0: f64,
    h0: f64,
    r0p: f64,
    span: f64,
    #[serde(rename = "rel-tol")]
    rel_tol: f64,
    #[serde(rename = "abs-tol")]
    abs_tol: f64,
    sweep: Option<String>,
}

pub fn bottle(args: &BottleArgs, ctx: &Ctx) -> Result<Vec<String>, CliError> {
    const NAME: &str = "bottle";
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let tol = tolerances(a.rel_tol, a.abs_tol);
    let (r0, h0) = (a.r0.unwrap_or(1.0), a.h0.unwrap_or(-1.0));
    let base = BottleParams {
        n: a.n.unwrap_or(2),
        r0,
        h0,
        r0p: a.r0p.unwrap_or(0.5),
        span: a
            .span
            .unwrap_or_else(|| Span::default_for(&StartChart::GraphOverH { h0, r0, r0p: 0.0 }).max_abs_h),
        rel_tol: tol.rel_tol,
        abs_tol: tol.abs_tol,
        sweep: a.sweep.clone(),
    };
    let out = ctx.output(&file, NAME, &FORMATS, &FORMATS)?;
    let one = |r0p: f64, out: &Output| {
        let p = BottleParams {
            r0p,
            sweep: None,
            ..base.clone()
        };
        let echo = config::echo(NAME, &p, out);
        let hyp = "infinite bottle hypothesis (n >= 2, r0 > 0, h0 < 0, 0 < r0' < -h0/r0)";
        let b = build_infinite_bottle_with(p.n, p.r0, p.h0, p.r0p, span(Some(p.span))?, tol)
            .map_err(|e| classify(e, hyp))?;
        let outcome = Outcome {
            regime: Some(Regime::BottleBetweenCylinders {
                r_bot: b.r_bot,
                r_top: b.r_top,
                h1: b.h1,
            }),
            trajectory: b.trajectory,
            h2: None,
            barrier_violation: Some(b.barrier_violation),
            reflect: false,
        };
        write(out, &echo, &format!("infinite bottle, n = {}", p.n), &outcome)
    };
    match sweep_values(&base.sweep)? {
        Some(values) => sweep(&values, &out, one),
        None => one(base.r0p, &out),
    }
}

#[derive(Debug, Clone, Serialize)]
struct ShootParams {
    n: usize,
    #[serde(rename = "C")]
    c_const: f64,
    h0: f64,
    span: f64,
    #[serde(rename = "rel-tol")]
    rel_tol: f64,
    #[serde(rename = "abs-tol")]
    abs_tol: f64,
    sweep: Option<String>,
}

pub fn shoot(args: &ShootArgs, ctx: &Ctx) -> Result<Vec<String>, CliError> {
    const NAME: &str = "shoot";
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let tol = tolerances(a.rel_tol, a.abs_tol);
    let h0 = a.h0.unwrap_or(-1.0);
    let base = ShootParams {
        n: a.n.unwrap_or(2),
        c_const: a.c_const.unwrap_or(1.0),
        h0,
        span: a.span.unwrap_or(100.0 * h0.abs()),
        rel_tol: tol.rel_tol,
        abs_tol: tol.abs_tol,
        sweep: a.sweep.clone(),
    };
    let out = ctx.output(&file, NAME, &FORMATS, &FORMATS)?;
    let one = |c_const: f64, out: &Output| {
        let p = ShootParams {
            c_const,
            sweep: None,
            ..base.clone()
        };
        let echo = config::echo(NAME, &p, out);
        let hyp = "axis shooting hypothesis (n >= 2, C > 1/n, h0 < 0)";
        let sp = span(Some(p.span))?.expect("span is set");
        let shot = shoot_from_axis_with(p.n, p.c_const, p.h0, sp, tol, &IntegrationOptions::default())
            .map_err(|e| classify(e, hyp))?;
        let outcome = Outcome {
            h2: Some((shot.h2_numeric, shot.h2_closed_form)),
            trajectory: shot.trajectory,
            regime: None,
            barrier_violation: None,
            reflect: false,
        };
        write(out, &echo, &format!("axis shot, n = {}, C = {}", p.n, p.c_const), &outcome)
    };
    match sweep_values(&base.sweep)? {
        Some(values) => sweep(&values, &out, one),
        None => one(base.c_const, &out),
    }
}

#[derive(Debug, Clone, Serialize)]
struct ClassifyParams {
    mode: Mode,
    n: usize,
    #[serde(rename = "C")]
    c_const: f64,
    h0: Option<f64>,
    r0: Option<f64>,
    /// `null` leaves the extent to the classifier.
    span: Option<f64>,
    #[serde(rename = "rel-tol")]
    rel_tol: f64,
    #[serde(rename = "abs-tol")]
    abs_tol: f64,
    sweep: Option<String>,
}

pub fn classify_cmd(args: &ClassifyArgs, ctx: &Ctx) -> Result<Vec<String>, CliError> {
    const NAME: &str = "classify";
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let tol = tolerances(a.rel_tol, a.abs_tol);
    let mode = a.mode.unwrap_or(Mode::Plane);
    let base = ClassifyParams {
        mode,
        n: a.n.unwrap_or(2),
        c_const: a.c_const.unwrap_or(1.0),
        h0: (mode == Mode::Plane).then(|| a.h0.unwrap_or(-1.0)),
        r0: (mode == Mode::Cylinder).then(|| a.r0.unwrap_or(1.0)),
        span: a.span,
        rel_tol: tol.rel_tol,
        abs_tol: tol.abs_tol,
        sweep: a.sweep.clone(),
    };
    let out = ctx.output(&file, NAME, &FORMATS, &FORMATS)?;
    let one = |c_const: f64, out: &Output| {
        let p = ClassifyParams {
            c_const,
            sweep: None,
            ..base.clone()
        };
        let echo = config::echo(NAME, &p, out);
        let sp = span(p.span)?;
        let (res, hyp, title) = match p.mode {
            Mode::Plane => (
                classify_hyperplane_expander_with(p.n, p.c_const, p.h0.unwrap_or(-1.0), sp, tol),
                "hyperplane expander hypothesis (n >= 2, C > 1/n, h0 < 0)",
                "hyperplane expander",
            ),
            Mode::Cylinder => (
                classify_hypercylinder_expander_with(p.n, p.c_const, p.r0.unwrap_or(1.0), sp, tol),
                "hypercylinder expander hypothesis (n >= 2, C > 1/n, r0 > 0)",
                "hypercylinder expander",
            ),
        };
        let c = res.map_err(|e| classify(e, hyp))?;
        let outcome = Outcome {
            regime: Some(c.regime),
            h2: c.h2_numeric.map(|h| (h, -1.0 / (p.n as f64 * p.c_const * p.h0.unwrap_or(-1.0)))),
            trajectory: c.trajectory,
            barrier_violation: None,
            reflect: p.mode == Mode::Cylinder,
        };
        write(out, &echo, &format!("{title}, n = {}, C = {}", p.n, p.c_const), &outcome)
    };
    match sweep_values(&base.sweep)? {
        Some(values) => sweep(&values, &out, one),
        None => one(base.c_const, &out),
    }
}
