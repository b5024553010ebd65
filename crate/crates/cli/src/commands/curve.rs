use std::f64::consts::TAU;

use clap::Args;
use imcf_solitons::plane::{sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
use serde::{Deserialize, Serialize};

use super::Ctx;
use crate::config::{self, Format};
use crate::error::{classify, CliError};
use crate::output::{self, emit, num, Csv, Marker, Plot, Series};

pub const NAME: &str = "gen-curve";

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GenCurveArgs {
    /// Speed constant c (nonzero).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
struct Params {
    c: f64,
    mu1: f64,
    mu2: f64,
    theta_min: f64,
    theta_max: f64,
    samples: usize,
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a serde_json::Value,
    closed: bool,
    samples: usize,
    length: f64,
    residual_max: f64,
}

pub fn run(args: &GenCurveArgs, ctx: &Ctx) -> Result<Vec<String>, CliError> {
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let p = Params {
        c: a.c.unwrap_or(1.0),
        mu1: a.mu1.unwrap_or(1.0),
        mu2: a.mu2.unwrap_or(0.0),
        theta_min: a.theta_min.unwrap_or(0.0),
        theta_max: a.theta_max.unwrap_or(TAU),
        samples: a.samples.unwrap_or(256),
    };
    let out = ctx.output(&file, "curve", &[Format::Csv, Format::Svg], &[Format::Csv, Format::Json, Format::Svg])?;
    let echo = config::echo(NAME, &p, &out);

    let hyp = "homothetic curve parameters (c != 0, (mu1, mu2) != 0, theta-min < theta-max)";
    let params = HomotheticCurveParams::new(p.c, p.mu1, p.mu2).map_err(|e| classify(e, hyp))?;
    let range = ThetaRange::new(p.theta_min, p.theta_max).map_err(|e| classify(e, hyp))?;
    let curve = sample_homothetic_curve(&params, range, p.samples).map_err(|e| classify(e, hyp))?;

    let rows: Vec<[f64; 7]> = curve
        .samples()
        .iter()
        .map(|s| {
            let nu = s.point.dot(s.normal);
            let residual = (s.kappa * nu + 1.0 / p.c).abs();
            [s.theta, s.s, s.point.x, s.point.y, s.kappa, nu, residual]
        })
        .collect();
    let residual_max = rows.iter().map(|r| r[6]).fold(0.0, f64::max);

    let mut written = Vec::new();
    written.extend(emit(&out, Format::Csv, || {
        let mut csv = Csv::new(&echo, &["theta", "s", "x", "y", "kappa", "nu", "residual"]);
        for r in &rows {
            csv.row(&r.map(num));
        }
        csv.finish()
    })?);
    written.extend(emit(&out, Format::Json, || {
        output::json(&Summary {
            config: &echo,
            closed: curve.is_closed(),
            samples: curve.len(),
            length: curve.length(),
            residual_max,
        })
    })?);
    written.extend(emit(&out, Format::Svg, || {
        let mut pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[2], r[3])).collect();
        if curve.is_closed() {
            pts.push(pts[0]);
        }
        Plot {
            title: format!("homothetic soliton c = {}, mu = ({}, {})", p.c, p.mu1, p.mu2),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series::line("curve", "#1f77b4", pts)],
            markers: vec![Marker {
                label: "origin".into(),
                color: "#222",
                at: (0.0, 0.0),
            }],
            equal_aspect: true,
        }
        .render(&echo)
    })?);
    Ok(written)
}
