//! `verify`: integral and pointwise identity checks on closed presets.

use clap::{Args, ValueEnum};
use imcf_solitons::verification::{
    clifford_expander_residual, compact_soliton_constant_check, minkowski_first_identity,
    minkowski_second_identity, RevolutionProfile, TorusGrid,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Ctx;
use crate::config::{self, Format};
use crate::error::{classify, CliError};
use crate::output::{self, emit};

pub const NAME: &str = "verify";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// First Hsiung–Minkowski integral.
    Minkowski1,
    /// Second Hsiung–Minkowski integral.
    Minkowski2,
    /// Clifford torus expander residual.
    Clifford,
    /// Implied soliton constant of a closed profile.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// Round sphere of radius --radius.
    Sphere,
    /// Profile circle of radius 0.3 centred at r = 1.
    Torus,
    /// Profile circle of radius 0.1 centred at r = 1.
    ThinTorus,
    /// Semi-axes 1 (radial) and 1.5 (axial).
    Ellipsoid,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: Option<Check>,
    /// Quadrature intervals, or grid size for the Clifford torus.
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long, value_enum)]
    pub preset: Option<Shape>,
    /// Hypersurface dimension of the revolution presets.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub radius: Option<f64>,
    /// Pass threshold.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct Params {
    check: Check,
    resolution: usize,
    preset: Option<Shape>,
    n: usize,
    radius: Option<f64>,
    tolerance: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a Value,
    value: f64,
    tolerance: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    /// Residual at half the resolution divided by the residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    refinement_ratio: Option<f64>,
}

fn profile(shape: Shape, n: usize, radius: f64, intervals: usize) -> imcf_solitons::Result<RevolutionProfile> {
    match shape {
        Shape::Sphere => RevolutionProfile::sphere(n, radius, intervals),
        Shape::Torus => RevolutionProfile::torus(n, 1.0, 0.3, intervals),
        Shape::ThinTorus => RevolutionProfile::torus(n, 1.0, 0.1, intervals),
        Shape::Ellipsoid => RevolutionProfile::ellipsoid(n, 1.0, 1.5, intervals),
    }
}

/// Runs the check; returns the JSON report (also printed by the caller).
pub fn run(args: &VerifyArgs, ctx: &Ctx) -> Result<(Vec<String>, String), CliError> {
    let file = ctx.load(NAME)?;
    let a = config::merge(args, &file)?;
    let check = a
        .check
        .ok_or_else(|| CliError::Config("--check is required (flag or config)".into()))?;
    let (resolution, preset, tolerance) = match check {
        Check::Minkowski1 => (2048, Some(Shape::Torus), 1e-6),
        Check::Minkowski2 => (4096, Some(Shape::ThinTorus), 1e-5),
        Check::Clifford => (64, None, 1e-3),
        Check::Constant => (512, Some(Shape::Sphere), 1e-8),
    };
    let preset = preset.map(|d| a.preset.unwrap_or(d));
    let p = Params {
        check,
        resolution: a.resolution.unwrap_or(resolution),
        preset,
        n: if check == Check::Clifford { 2 } else { a.n.unwrap_or(2) },
        radius: (preset == Some(Shape::Sphere)).then(|| a.radius.unwrap_or(1.0)),
        tolerance: a.tolerance.unwrap_or(tolerance),
    };
    let out = ctx.output(&file, NAME, &[Format::Json], &[Format::Json])?;
    let echo = config::echo(NAME, &p, &out);
    let hyp = "closed profile with nonvanishing mean curvature";
    let shape = || {
        profile(p.preset.expect("revolution checks have a preset"), p.n, p.radius.unwrap_or(1.0), p.resolution)
            .map_err(|e| classify(e, hyp))
    };
    let report = match check {
        Check::Minkowski1 | Check::Minkowski2 => {
            let prof = shape()?;
            let value = if check == Check::Minkowski1 {
                minkowski_first_identity(&prof)
            } else {
                minkowski_second_identity(&prof)
            }
            .map_err(|e| classify(e, hyp))?;
            Report {
                config: &echo,
                value,
                tolerance: p.tolerance,
                pass: value.abs() <= p.tolerance,
                expected: None,
                max_deviation: None,
                refinement_ratio: None,
            }
        }
        Check::Constant => {
            let chk = compact_soliton_constant_check(&shape()?).map_err(|e| classify(e, hyp))?;
            let expected = p.n as f64;
            Report {
                config: &echo,
                value: chk.mean,
                tolerance: p.tolerance,
                pass: (chk.mean - expected).abs() <= p.tolerance && chk.max_deviation <= p.tolerance,
                expected: Some(expected),
                max_deviation: Some(chk.max_deviation),
                refinement_ratio: None,
            }
        }
        Check::Clifford => {
            let grid = |m: usize| TorusGrid::new(m).map_err(|e| classify(e, "torus grid resolution >= 8"));
            let value = clifford_expander_residual(&grid(p.resolution)?);
            let coarse = clifford_expander_residual(&grid((p.resolution / 2).max(8))?);
            Report {
                config: &echo,
                value,
                tolerance: p.tolerance,
                pass: value <= p.tolerance,
                expected: None,
                max_deviation: None,
                refinement_ratio: (p.resolution >= 16).then(|| coarse / value),
            }
        }
    };
    let text = output::json(&report);
    let written = emit(&out, Format::Json, || text.clone())?;
    Ok((written.into_iter().collect(), text))
}
