//! Planar vectors and sampled plane curves.
//!
//! Frame convention: the unit tangent is `(cos θ, sin θ)` and the unit normal
//! is the tangent rotated by `+π/2`, i.e. `(-sin θ, cos θ)`. Signed curvature
//! is `κ = dθ/ds`, so the curvature vector is `κ N`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Rotation by `+π/2`.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.x, self * v.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// One sample of a plane curve with its Frenet data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub s: f64,
    pub theta: f64,
    pub point: Vec2,
    pub tangent: Vec2,
    pub normal: Vec2,
    pub kappa: f64,
}

impl CurveSample {
    /// Builds a sample whose frame is derived from the tangential angle.
    pub fn from_angle(s: f64, theta: f64, point: Vec2, kappa: f64) -> Self {
        let tangent = Vec2::from_angle(theta);
        Self {
            s,
            theta,
            point,
            tangent,
            normal: tangent.perp(),
            kappa,
        }
    }
}

const FRAME_TOL: f64 = 1e-12;

/// Ordered samples of a plane curve, strictly increasing in arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneCurve {
    samples: Vec<CurveSample>,
    closed: bool,
}

impl PlaneCurve {
    pub fn new(samples: Vec<CurveSample>, closed: bool) -> Result<Self> {
        for w in samples.windows(2) {
            if !(w[1].s > w[0].s) {
                return Err(SolitonError::InvalidParameter(format!(
                    "arc length not strictly increasing ({} then {})",
                    w[0].s, w[1].s
                )));
            }
        }
        for (i, smp) in samples.iter().enumerate() {
            let t = smp.tangent;
            let n = smp.normal;
            if (t.norm() - 1.0).abs() > FRAME_TOL
                || (n.norm() - 1.0).abs() > FRAME_TOL
                || t.dot(n).abs() > FRAME_TOL
                || (n - t.perp()).norm() > FRAME_TOL
            {
                return Err(SolitonError::InvalidParameter(format!(
                    "sample {i} does not carry an orthonormal +pi/2 frame"
                )));
            }
        }
        Ok(Self { samples, closed })
    }

    /// Builds a curve from polygon vertices, estimating the frame and signed
    /// curvature by three-point (circumscribed circle) stencils. Endpoints of
    /// open curves use one-sided stencils.
    pub fn from_polyline(points: &[Vec2], closed: bool) -> Result<Self> {
        let m = points.len();
        if m < 3 {
            return Err(SolitonError::InvalidParameter(format!(
                "polyline needs at least 3 vertices, got {m}"
            )));
        }
        let idx = |i: isize| -> usize { i.rem_euclid(m as isize) as usize };
        let mut s = Vec::with_capacity(m);
        let mut acc = 0.0;
        s.push(0.0);
        for i in 1..m {
            acc += points[i].distance(points[i - 1]);
            s.push(acc);
        }

        let mut raw_theta = Vec::with_capacity(m);
        let mut kappa = Vec::with_capacity(m);
        for i in 0..m {
            let (a, b, c) = if closed {
                (
                    points[idx(i as isize - 1)],
                    points[i],
                    points[idx(i as isize + 1)],
                )
            } else if i == 0 {
                (points[0], points[1], points[2])
            } else if i == m - 1 {
                (points[m - 3], points[m - 2], points[m - 1])
            } else {
                (points[i - 1], points[i], points[i + 1])
            };
            let dir = if closed || (i > 0 && i < m - 1) {
                c - a
            } else if i == 0 {
                points[1] - points[0]
            } else {
                points[m - 1] - points[m - 2]
            };
            raw_theta.push(dir.y.atan2(dir.x));
            kappa.push(menger_curvature(a, b, c));
        }

        let theta = unwrap_angles(&raw_theta);
        let samples = (0..m)
            .map(|i| CurveSample::from_angle(s[i], theta[i], points[i], kappa[i]))
            .collect();
        Self::new(samples, closed)
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn points(&self) -> Vec<Vec2> {
        self.samples.iter().map(|s| s.point).collect()
    }

    pub fn arc_lengths(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.s).collect()
    }

    /// Total length, including the closing segment for closed curves.
    pub fn length(&self) -> f64 {
        let (Some(first), Some(last)) = (self.samples.first(), self.samples.last()) else {
            return 0.0;
        };
        let mut l = last.s - first.s;
        if self.closed {
            l += last.point.distance(first.point);
        }
        l
    }

    /// Scales every point about the origin; curvature scales by `1/factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|s| CurveSample {
                s: s.s * factor.abs(),
                point: factor * s.point,
                kappa: s.kappa / factor.abs(),
                ..*s
            })
            .collect();
        Self {
            samples,
            closed: self.closed,
        }
    }

    /// Keeps samples `[start, end)`; the result is open.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self {
            samples: self.samples[start..end].to_vec(),
            closed: false,
        }
    }
}

/// Signed curvature of the circle through `a`, `b`, `c` (positive when the
/// turn `a -> b -> c` is counter-clockwise).
pub fn menger_curvature(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let ab = b - a;
    let bc = c - b;
    let ca = a - c;
    let denom = ab.norm() * bc.norm() * ca.norm();
    if denom == 0.0 {
        return 0.0;
    }
    2.0 * ab.cross(bc) / denom
}

/// Removes `2π` jumps from a sequence of angles.
pub fn unwrap_angles(raw: &[f64]) -> Vec<f64> {
    use std::f64::consts::{PI, TAU};
    let mut out = Vec::with_capacity(raw.len());
    let mut offset = 0.0;
    for (i, &a) in raw.iter().enumerate() {
        if i > 0 {
            let prev = raw[i - 1];
            let d = a - prev;
            if d > PI {
                offset -= TAU;
            } else if d < -PI {
                offset += TAU;
            }
        }
        out.push(a + offset);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn polyline_circle_has_unit_curvature_and_outward_normal_sign() {
        let n = 200;
        let pts: Vec<Vec2> = (0..n)
            .map(|i| Vec2::from_angle(TAU * i as f64 / n as f64))
            .collect();
        let c = PlaneCurve::from_polyline(&pts, true).unwrap();
        for s in c.samples() {
            assert!((s.kappa - 1.0).abs() < 1e-12, "kappa {}", s.kappa);
            // counter-clockwise: normal points inward
            assert!((s.normal + s.point).norm() < 1e-3);
        }
        assert!((c.length() - TAU).abs() < 1e-3);
    }

    #[test]
    fn rejects_non_increasing_arc_length() {
        let a = CurveSample::from_angle(0.0, 0.0, Vec2::ZERO, 1.0);
        let b = CurveSample::from_angle(0.0, 0.0, Vec2::new(1.0, 0.0), 1.0);
        assert!(PlaneCurve::new(vec![a, b], false).is_err());
    }

    #[test]
    fn rejects_broken_frame() {
        let mut a = CurveSample::from_angle(0.0, 0.3, Vec2::ZERO, 1.0);
        a.normal = -a.normal;
        assert!(PlaneCurve::new(vec![a], false).is_err());
    }

    #[test]
    fn unwrap_removes_jumps() {
        let raw = [3.0, -3.0, -2.5];
        let u = unwrap_angles(&raw);
        assert!((u[1] - (-3.0 + TAU)).abs() < 1e-15);
        assert!(u[2] > u[1]);
    }
}
