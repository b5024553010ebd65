//! Comparison of evolved solitons with their predicted self-similar images.
//!
//! A homothetic soliton with `κ ν = -1/c` evolves by dilation `e^{ct}`, and
//! in the dilated frame its points slide along the curve at
//! `dθ/dt = -ν'(θ)/ν(θ)`. A translator with velocity `(0, 1)` slides along
//! the cycloid at `dt/dτ = -2 cot(t/2)` in the patch parameter. The
//! comparison arc is the closed form on the slid parameter range.
//!
//! The linearized flow diffuses with unit diffusivity in the tangent angle,
//! so whatever the ends of a truncated arc do reaches about `2√t` radians
//! inward. The checks therefore evolve the closed form on a range padded by
//! [`PAD_WIDTHS`]` √t` on each side and compare only the part that started in
//! the interior of the requested range, identified by tangent angle (which
//! dilations and translations preserve).

use serde::{Deserialize, Serialize};

use super::step::{flow_until, FlowState, Spacing};
use crate::error::{Result, SolitonError};
use crate::geometry::Vec2;
use crate::numeric::directed_polyline_distance;
use std::f64::consts::TAU;

use crate::plane::{
    cycloid_point, sample_cycloid, sample_homothetic_curve, support_function,
    HomotheticCurveParams, ThetaRange,
};

/// Fraction of arc length excluded at each end of open curves.
pub const BOUNDARY_STRIP: f64 = 0.1;
pub const FLOW_SAMPLES: usize = 256;
const REFERENCE_SAMPLES: usize = 2048;
const SLIDE_STEPS: usize = 2000;
/// Padding in tangent angle, in units of `√t`.
pub const PAD_WIDTHS: f64 = 3.0;
/// Padding stops this fraction of the way to a zero of the support
/// function or a cusp.
const PAD_MARGIN: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfSimilarity {
    /// Strip-aware Hausdorff distance to the `e^{cT}`-dilated comparison arc.
    pub distance: f64,
    /// Largest `|X|` on the evolved curve.
    pub scale: f64,
    pub dilation_expected: f64,
    /// Least-squares dilation about the origin.
    pub dilation_fit: f64,
    /// Evolved vertices that entered the comparison.
    pub evolved: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatorFlow {
    pub distance: f64,
    /// Least-squares rigid translation.
    pub translation: Vec2,
    /// Evolved vertices that entered the comparison.
    pub evolved: Vec<Vec2>,
}

fn rk4(f: impl Fn(f64) -> f64, y0: f64, t: f64) -> f64 {
    let h = t / SLIDE_STEPS as f64;
    let mut y = y0;
    for _ in 0..SLIDE_STEPS {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// The angle range occupied after time `t` by the points starting on `range`.
pub fn sliding_range(p: &HomotheticCurveParams, range: ThetaRange, t: f64) -> Result<ThetaRange> {
    let rate = |th: f64| {
        let s = support_function(p, th);
        -s.dnu_dtheta / s.nu
    };
    let (a, b) = (rk4(rate, range.min, t), rk4(rate, range.max, t));
    ThetaRange::new(a.min(b), a.max(b))
}

/// `range` widened by [`PAD_WIDTHS`]` √t` on each side, stopping short of
/// zeros of the support function.
pub fn padded_range(p: &HomotheticCurveParams, range: ThetaRange, t: f64) -> Result<ThetaRange> {
    let pad = PAD_WIDTHS * t.sqrt();
    let reach = |from: f64, dir: f64| {
        let sign = support_function(p, from).nu.signum();
        let steps = 1000;
        for k in 1..=steps {
            let d = pad * k as f64 / steps as f64;
            if support_function(p, from + dir * d).nu.signum() != sign {
                return PAD_MARGIN * d;
            }
        }
        pad
    };
    ThetaRange::new(range.min - reach(range.min, -1.0), range.max + reach(range.max, 1.0))
}

/// Unwrapped tangent angle at each vertex from central chords (end chords
/// at the ends), on the branch closest to `near` at vertex 0.
fn vertex_angles(points: &[Vec2], near: f64) -> Vec<f64> {
    let m = points.len();
    let raw: Vec<f64> = (0..m)
        .map(|i| {
            let d = points[(i + 1).min(m - 1)] - points[i.saturating_sub(1)];
            d.y.atan2(d.x)
        })
        .collect();
    let mut th = crate::geometry::unwrap_angles(&raw);
    let shift = ((near - th[0]) / std::f64::consts::TAU).round() * std::f64::consts::TAU;
    th.iter_mut().for_each(|x| *x += shift);
    th
}

fn interior_of(range: ThetaRange) -> Result<ThetaRange> {
    let cut = BOUNDARY_STRIP * (range.max - range.min);
    ThetaRange::new(range.min + cut, range.max - cut)
}

fn evolve(initial: crate::geometry::PlaneCurve, t: f64, steps: usize) -> Result<Vec<Vec2>> {
    let mut state = FlowState::new(initial, t / steps as f64)?;
    state.resample.spacing = Spacing::TurningAngle;
    Ok(flow_until(state, t)?.curve.points())
}

fn check_time(t: f64, steps: usize) -> Result<()> {
    if steps == 0 || !(t >= 0.0 && t.is_finite()) {
        return Err(SolitonError::InvalidParameter(format!(
            "need a nonnegative time and at least one step, got T = {t}, steps = {steps}"
        )));
    }
    Ok(())
}

fn padded_count(samples: usize, span: f64, padded: f64) -> usize {
    ((samples as f64 * padded / span).ceil() as usize).max(samples)
}

fn arc_interior(points: &[Vec2]) -> &[Vec2] {
    let mut s = vec![0.0];
    for w in points.windows(2) {
        s.push(s.last().unwrap() + w[0].distance(w[1]));
    }
    let total = *s.last().unwrap();
    let lo = s.partition_point(|&x| x < BOUNDARY_STRIP * total);
    let hi = s.partition_point(|&x| x <= (1.0 - BOUNDARY_STRIP) * total);
    &points[lo..hi.max(lo + 1)]
}

/// Hausdorff distance between the interiors of two curves, each interior
/// measured against the whole of the other curve so that the two strips
/// need not cut at exactly corresponding points. Closed curves have no strip.
pub fn strip_distance(a: &[Vec2], b: &[Vec2], closed: bool) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(SolitonError::EmptyCurve);
    }
    let (ia, ib) = if closed { (a, b) } else { (arc_interior(a), arc_interior(b)) };
    Ok(directed_polyline_distance(ia, b, closed).max(directed_polyline_distance(ib, a, closed)))
}

fn rms_distance(points: &[Vec2], reference: &[Vec2], closed: bool) -> f64 {
    let sum: f64 = points
        .iter()
        .map(|&p| directed_polyline_distance(&[p], reference, closed).powi(2))
        .sum();
    (sum / points.len() as f64).sqrt()
}

/// `λ` minimizing the RMS distance from `points` to `λ · reference`.
pub fn best_fit_dilation(points: &[Vec2], reference: &[Vec2], closed: bool) -> f64 {
    let cost = |log_l: f64| {
        let l = log_l.exp();
        let scaled: Vec<Vec2> = reference.iter().map(|&q| l * q).collect();
        rms_distance(points, &scaled, closed)
    };
    // coarse scan, then golden section in the best cell
    let (lo, hi, cells) = (-3.0, 3.0, 120);
    let width = (hi - lo) / cells as f64;
    let best = (0..=cells)
        .map(|k| lo + width * k as f64)
        .map(|x| (x, cost(x)))
        .fold((0.0, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc })
        .0;
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (best - width, best + width);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (cost(c), cost(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = cost(d);
        }
    }
    (0.5 * (a + b)).exp()
}

fn closest_on_polyline(p: Vec2, poly: &[Vec2]) -> (Vec2, Vec2) {
    let mut best = (f64::INFINITY, poly[0], Vec2::new(1.0, 0.0));
    for w in poly.windows(2) {
        let d = w[1] - w[0];
        let len2 = d.norm_sq();
        let u = if len2 > 0.0 { ((p - w[0]).dot(d) / len2).clamp(0.0, 1.0) } else { 0.0 };
        let q = w[0] + u * d;
        let dist = p.distance(q);
        if dist < best.0 {
            best = (dist, q, d.normalized());
        }
    }
    (best.1, best.2)
}

/// Rigid translation `τ` minimizing the squared distances from `points` to
/// `reference + τ`, by point-to-line Gauss-Newton from `τ = 0`.
pub fn best_fit_translation(points: &[Vec2], reference: &[Vec2]) -> Vec2 {
    let mut tau = Vec2::new(0.0, 0.0);
    for _ in 0..50 {
        let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &p in points {
            let (q, dir) = closest_on_polyline(p - tau, reference);
            let n = dir.perp();
            let r = n.dot(p - tau - q);
            a11 += n.x * n.x;
            a12 += n.x * n.y;
            a22 += n.y * n.y;
            b1 += n.x * r;
            b2 += n.y * r;
        }
        let det = a11 * a22 - a12 * a12;
        if det.abs() <= f64::EPSILON * (a11 * a22).abs() {
            break;
        }
        let step = Vec2::new((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det);
        tau += step;
        if step.norm() <= 1e-15 * tau.norm().max(1.0) {
            break;
        }
    }
    tau
}

/// Evolves the sampled soliton for time `t` in `steps` nominal steps and
/// returns the distance to its predicted dilation.
pub fn self_similarity_check(
    params: &HomotheticCurveParams,
    theta_range: ThetaRange,
    t: f64,
    steps: usize,
) -> Result<f64> {
    Ok(self_similarity_check_with(params, theta_range, t, steps, FLOW_SAMPLES)?.distance)
}

/// `samples` is the resolution on `theta_range`; the padding is sampled at
/// the same density.
pub fn self_similarity_check_with(
    params: &HomotheticCurveParams,
    theta_range: ThetaRange,
    t: f64,
    steps: usize,
    samples: usize,
) -> Result<SelfSimilarity> {
    check_time(t, steps)?;
    let dilation_expected = (params.c * t).exp();
    let full = sample_homothetic_curve(params, theta_range, samples)?;
    if full.is_closed() {
        let evolved = evolve(full.clone(), t, steps)?;
        let target: Vec<Vec2> = sample_homothetic_curve(params, theta_range, REFERENCE_SAMPLES)?
            .points()
            .iter()
            .map(|&q| dilation_expected * q)
            .collect();
        let distance = strip_distance(&evolved, &target, true)?;
        let dilation_fit = best_fit_dilation(&evolved, &full.points(), true);
        let scale = evolved.iter().map(|p| p.norm()).fold(0.0, f64::max);
        return Ok(SelfSimilarity {
            distance,
            scale,
            dilation_expected,
            dilation_fit,
            evolved,
        });
    }

    let padded = padded_range(params, theta_range, t)?;
    let count = padded_count(samples, theta_range.max - theta_range.min, padded.max - padded.min);
    let initial = sample_homothetic_curve(params, padded, count)?;
    let near = initial.samples()[0].theta;
    let evolved = evolve(initial, t, steps)?;

    let interior = interior_of(theta_range)?;
    let slid_interior = sliding_range(params, interior, t)?;
    let slid = sliding_range(params, theta_range, t)?;
    let angles = vertex_angles(&evolved, near);
    let selected: Vec<Vec2> = evolved
        .iter()
        .zip(&angles)
        .filter(|(_, th)| slid_interior.min <= **th && **th <= slid_interior.max)
        .map(|(p, _)| *p)
        .collect();
    if selected.is_empty() {
        return Err(SolitonError::InvalidParameter(
            "no evolved vertex falls in the compared range".into(),
        ));
    }
    let dilate = |r: ThetaRange| -> Result<Vec<Vec2>> {
        Ok(sample_homothetic_curve(params, r, REFERENCE_SAMPLES)?
            .points()
            .iter()
            .map(|&q| dilation_expected * q)
            .collect())
    };
    let distance = directed_polyline_distance(&selected, &dilate(slid)?, false)
        .max(directed_polyline_distance(&dilate(slid_interior)?, &evolved, false));

    let wide = ThetaRange::new(padded.min.min(slid.min), padded.max.max(slid.max))?;
    let reference = sample_homothetic_curve(params, wide, REFERENCE_SAMPLES)?.points();
    let dilation_fit = best_fit_dilation(&selected, &reference, false);
    let scale = selected.iter().map(|p| p.norm()).fold(0.0, f64::max);
    Ok(SelfSimilarity {
        distance,
        scale,
        dilation_expected,
        dilation_fit,
        evolved: selected,
    })
}

fn cycloid_arc(t_min: f64, t_max: f64) -> Vec<Vec2> {
    (0..REFERENCE_SAMPLES)
        .map(|k| cycloid_point(t_min + (t_max - t_min) * k as f64 / (REFERENCE_SAMPLES - 1) as f64))
        .collect()
}

fn slide_cycloid(t0: f64, t: f64) -> Result<f64> {
    let end = rk4(|p| -2.0 / (0.5 * p).tan(), t0, t);
    if end > 0.0 && end < TAU {
        Ok(end)
    } else {
        Err(SolitonError::CuspPoint { t: if end <= 0.0 { 0.0 } else { TAU } })
    }
}

/// Evolves the cycloid arch on `[t_min, t_max] ⊂ (0, 2π)` for time `t` and
/// compares it with the `t (0, 1)` translate of the slid arc. The tangent
/// angle is `π/2 - t/2`, so the padding is `2 PAD_WIDTHS √t` in the patch
/// parameter.
pub fn translator_flow_check(t_min: f64, t_max: f64, samples: usize, t: f64, steps: usize) -> Result<TranslatorFlow> {
    check_time(t, steps)?;
    if !(t_min > 0.0 && t_max < TAU && t_min < t_max) {
        return Err(SolitonError::CuspPoint { t: if t_min <= 0.0 { 0.0 } else { TAU } });
    }
    let pad = 2.0 * PAD_WIDTHS * t.sqrt();
    let lo = t_min - pad.min(PAD_MARGIN * t_min);
    let hi = t_max + pad.min(PAD_MARGIN * (TAU - t_max));
    let count = padded_count(samples, t_max - t_min, hi - lo);
    let initial = sample_cycloid(lo, hi, count)?;
    let near = initial.samples()[0].theta;
    let evolved = evolve(initial, t, steps)?;

    let cut = BOUNDARY_STRIP * (t_max - t_min);
    let (ia, ib) = (slide_cycloid(t_min + cut, t)?, slide_cycloid(t_max - cut, t)?);
    let (a, b) = (slide_cycloid(t_min, t)?, slide_cycloid(t_max, t)?);
    let selected: Vec<Vec2> = evolved
        .iter()
        .zip(vertex_angles(&evolved, near))
        .filter(|(_, th)| {
            let p = std::f64::consts::PI - 2.0 * th;
            ia <= p && p <= ib
        })
        .map(|(p, _)| *p)
        .collect();
    if selected.is_empty() {
        return Err(SolitonError::InvalidParameter(
            "no evolved vertex falls in the compared range".into(),
        ));
    }
    let shift = Vec2::new(0.0, t);
    let moved = |x: f64, y: f64| -> Vec<Vec2> { cycloid_arc(x, y).into_iter().map(|q| q + shift).collect() };
    let distance = directed_polyline_distance(&selected, &moved(a, b), false)
        .max(directed_polyline_distance(&moved(ia, ib), &evolved, false));
    let reference = cycloid_arc(lo.min(a), hi.max(b));
    let translation = best_fit_translation(&selected, &reference);
    Ok(TranslatorFlow {
        distance,
        translation,
        evolved: selected,
    })
}
