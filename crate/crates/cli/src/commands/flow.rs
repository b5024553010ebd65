//! `flow`: evolve a preset soliton and compare with its predicted motion.

use std::f64::consts::TAU;

use clap::{Args, ValueEnum};
use imcf_solitons::flow::{self_similarity_check_with, sliding_range, translator_flow_check};
use imcf_solitons::plane::{cycloid_point, sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
use imcf_solitons::Vec2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Ctx;
use crate::config::{self, Format};
use crate::error::{classify_flow, CliError};
use crate::output::{self, emit, num, Csv, Plot, Series};

pub const NAME: &str = "flow";

/// Pass thresholds: circle log-slope, homothetic dilation (relative),
/// translator drift per unit time.
pub const SLOPE_TOL: f64 = 1e-3;
pub const DILATION_TOL: f64 = 1e-2;
pub const DRIFT_TOL: f64 = 1e-3;

const CYCLOID_ARC: (f64, f64) = (1.5, 4.78);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Unit circle, c = 1.
    Circle,
    /// Grim-reaper cycloid arch translating with velocity (0, 1).
    Cycloid,
    /// Logarithmic spiral, c = 2.
    Spiral,
    /// Involute of the unit circle, c = 1.
    Involute,
}

impl Preset {
    fn homothetic(self) -> Option<(HomotheticCurveParams, ThetaRange)> {
        let (c, mu1, mu2, a, b) = match self {
            Preset::Circle => (1.0, 1.0, 0.0, 0.0, TAU),
            Preset::Spiral => (2.0, 1.0, 1.0, 0.0, 2.0),
            Preset::Involute => (1.0, 0.0, 1.0, 1.0, 3.0),
            Preset::Cycloid => return None,
        };
        Some((
            HomotheticCurveParams::new(c, mu1, mu2).expect("preset constants are valid"),
            ThetaRange::new(a, b).expect("preset range is valid"),
        ))
    }

    fn default_time(self) -> f64 {
        match self {
            Preset::Cycloid => 0.1,
            _ => 0.5,
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FlowArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Total flow time.
    #[arg(long = "T")]
    #[serde(rename = "T")]
    pub t: Option<f64>,
    /// Nominal number of steps to reach T (the stable step may be smaller).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Samples on the compared arc.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Number of time-series rows.
    #[arg(long)]
    pub checkpoints: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
struct Params {
    preset: Preset,
    #[serde(rename = "T")]
    t: f64,
    steps: usize,
    samples: usize,
    checkpoints: usize,
}

#[derive(Serialize)]
struct HomotheticSummary<'a> {
    config: &'a Value,
    c: f64,
    /// Least-squares slope of `ln(dilation)` against `t` through the origin.
    log_slope: f64,
    dilation_expected: f64,
    dilation_fit: f64,
    dilation_error: f64,
    distance: f64,
    relative_distance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct TranslatorSummary<'a> {
    config: &'a Value,
    velocity_expected: Vec2,
    /// Least-squares slope of the fitted translation against `t`.
    velocity_fit: Vec2,
    drift_error: f64,
    distance: f64,
    pass: bool,
}

fn times(p: &Params) -> Vec<(f64, usize)> {
    (1..=p.checkpoints)
        .map(|k| {
            let f = k as f64 / p.checkpoints as f64;
            (p.t * f, ((p.steps as f64 * f).round() as usize).max(1))
        })
        .collect()
}

pub fn run(args: &FlowArgs, ctx: &Ctx) -> Result<Vec<String>, CliError> {
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let preset = a.preset.unwrap_or(Preset::Circle);
    let p = Params {
        preset,
        t: a.t.unwrap_or(preset.default_time()),
        steps: a.steps.unwrap_or(2000),
        samples: a.samples.unwrap_or(128),
        checkpoints: a.checkpoints.unwrap_or(4),
    };
    if !(p.t > 0.0 && p.t.is_finite() && p.steps > 0 && p.samples >= 8 && p.checkpoints > 0) {
        return Err(CliError::Precondition(
            "flow needs T > 0, steps > 0, samples >= 8 and checkpoints > 0".into(),
        ));
    }
    let fmts = [Format::Csv, Format::Json, Format::Svg];
    let out = ctx.output(&file, NAME, &fmts, &fmts)?;
    let echo = config::echo(NAME, &p, &out);
    let title = format!("{:?} under inverse curvature flow, T = {}", p.preset, p.t).to_lowercase();

    let mut written = Vec::new();
    match p.preset.homothetic() {
        Some((params, range)) => {
            let runs: Vec<_> = times(&p)
                .par_iter()
                .map(|&(t, steps)| self_similarity_check_with(&params, range, t, steps, p.samples).map(|s| (t, s)))
                .collect::<Result<_, _>>()
                .map_err(classify_flow)?;
            let (t_end, last) = runs.last().expect("at least one checkpoint");
            let stt: f64 = runs.iter().map(|(t, _)| t * t).sum();
            let log_slope = runs.iter().map(|(t, s)| t * s.dilation_fit.ln()).sum::<f64>() / stt;
            let dilation_error = runs
                .iter()
                .map(|(_, s)| (s.dilation_fit / s.dilation_expected - 1.0).abs())
                .fold(0.0, f64::max);
            let pass = match p.preset {
                Preset::Circle => (log_slope - params.c).abs() <= SLOPE_TOL,
                _ => dilation_error <= DILATION_TOL,
            };
            written.extend(emit(&out, Format::Csv, || {
                let mut csv = Csv::new(
                    &echo,
                    &["t", "dilation_expected", "dilation_fit", "distance", "relative_distance"],
                );
                for (t, s) in &runs {
                    csv.row(&[
                        num(*t),
                        num(s.dilation_expected),
                        num(s.dilation_fit),
                        num(s.distance),
                        num(s.distance / s.scale),
                    ]);
                }
                csv.finish()
            })?);
            written.extend(emit(&out, Format::Json, || {
                output::json(&HomotheticSummary {
                    config: &echo,
                    c: params.c,
                    log_slope,
                    dilation_expected: last.dilation_expected,
                    dilation_fit: last.dilation_fit,
                    dilation_error,
                    distance: last.distance,
                    relative_distance: last.distance / last.scale,
                    pass,
                })
            })?);
            let overlay = || -> Result<String, CliError> {
                let initial = sample_homothetic_curve(&params, range, 512).map_err(classify_flow)?;
                let slid = sliding_range(&params, range, *t_end).map_err(classify_flow)?;
                let predicted = sample_homothetic_curve(&params, slid, 512).map_err(classify_flow)?;
                let xy = |v: Vec<Vec2>, k: f64, close: bool| {
                    let mut pts: Vec<(f64, f64)> = v.iter().map(|q| (k * q.x, k * q.y)).collect();
                    if close && !pts.is_empty() {
                        pts.push(pts[0]);
                    }
                    pts
                };
                let closed = initial.is_closed();
                Ok(Plot {
                    title: title.clone(),
                    x_label: "x".into(),
                    y_label: "y".into(),
                    series: vec![
                        Series::line("initial", "#7f7f7f", xy(initial.points(), 1.0, closed)),
                        Series::line("evolved", "#1f77b4", xy(last.evolved.clone(), 1.0, closed)),
                        Series::line("predicted", "#d62728", xy(predicted.points(), last.dilation_expected, closed))
                            .dashed(),
                    ],
                    markers: Vec::new(),
                    equal_aspect: true,
                }
                .render(&echo))
            };
            if out.wants(Format::Svg) {
                let svg = overlay()?;
                written.extend(emit(&out, Format::Svg, || svg)?);
            }
        }
        None => {
            let (lo, hi) = CYCLOID_ARC;
            let runs: Vec<_> = times(&p)
                .par_iter()
                .map(|&(t, steps)| translator_flow_check(lo, hi, p.samples, t, steps).map(|f| (t, f)))
                .collect::<Result<_, _>>()
                .map_err(classify_flow)?;
            let (t_end, last) = runs.last().expect("at least one checkpoint");
            let stt: f64 = runs.iter().map(|(t, _)| t * t).sum();
            let velocity_fit = Vec2::new(
                runs.iter().map(|(t, f)| t * f.translation.x).sum::<f64>() / stt,
                runs.iter().map(|(t, f)| t * f.translation.y).sum::<f64>() / stt,
            );
            let expected = Vec2::new(0.0, 1.0);
            let drift_error = runs
                .iter()
                .map(|(t, f)| (f.translation - *t * expected).norm() / t)
                .fold(0.0, f64::max);
            written.extend(emit(&out, Format::Csv, || {
                let mut csv = Csv::new(&echo, &["t", "translation_x", "translation_y", "distance"]);
                for (t, f) in &runs {
                    csv.row(&[num(*t), num(f.translation.x), num(f.translation.y), num(f.distance)]);
                }
                csv.finish()
            })?);
            written.extend(emit(&out, Format::Json, || {
                output::json(&TranslatorSummary {
                    config: &echo,
                    velocity_expected: expected,
                    velocity_fit,
                    drift_error,
                    distance: last.distance,
                    pass: drift_error <= DRIFT_TOL,
                })
            })?);
            written.extend(emit(&out, Format::Svg, || {
                let arc = |shift: f64| -> Vec<(f64, f64)> {
                    (0..=512)
                        .map(|k| {
                            let q = cycloid_point(lo + (hi - lo) * k as f64 / 512.0);
                            (q.x, q.y + shift)
                        })
                        .collect()
                };
                Plot {
                    title: title.clone(),
                    x_label: "x".into(),
                    y_label: "y".into(),
                    series: vec![
                        Series::line("initial", "#7f7f7f", arc(0.0)),
                        Series::line("evolved", "#1f77b4", last.evolved.iter().map(|q| (q.x, q.y)).collect()),
                        Series::line("predicted", "#d62728", arc(*t_end)).dashed(),
                    ],
                    markers: Vec::new(),
                    equal_aspect: true,
                }
                .render(&echo)
            })?);
        }
    }
    Ok(written)
}
