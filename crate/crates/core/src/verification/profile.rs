//! Profiles of hypersurfaces of revolution `X = (r ω, h)`, `ω ∈ S^{n-1}`.
//!
//! With velocity `v = (r_t, h_t)` the unit normal is `ν = (-h_t, r_t)/|v|`,
//! the profile curvature `κ_prof = (r_t h_tt - h_t r_tt)/|v|³` and the
//! rotational curvature `κ_rot = h_t/(r |v|)` (multiplicity `n - 1`), so that
//! `H⃗ = (κ_prof + (n-1) κ_rot) ν`. The round sphere traversed from its north
//! pole has `ν` outward and `H = -n`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Result, SolitonError};

/// Closed periodic profiles must return to their start within this distance.
pub const CLOSURE_TOL: f64 = 1e-10;
const SPACING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub t: f64,
    pub r: f64,
    pub h: f64,
    pub r_t: f64,
    pub h_t: f64,
    pub r_tt: f64,
    pub h_tt: f64,
}

/// Pointwise curvature data of a profile sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalGeometry {
    /// `r^{n-1} |v|`, the area density up to the volume of `S^{n-1}`.
    pub weight: f64,
    pub kappa_prof: f64,
    pub kappa_rot: f64,
    /// `⟨X, ν⟩`.
    pub support: f64,
}

impl LocalGeometry {
    pub fn mean_curvature(&self, n: usize) -> f64 {
        self.kappa_prof + (n as f64 - 1.0) * self.kappa_rot
    }

    /// Second elementary symmetric function of the principal curvatures.
    pub fn sigma2(&self, n: usize) -> f64 {
        let m = n as f64 - 1.0;
        m * self.kappa_prof * self.kappa_rot + 0.5 * m * (m - 1.0) * self.kappa_rot * self.kappa_rot
    }
}

impl ProfileSample {
    pub fn local(&self, n: usize) -> LocalGeometry {
        let speed = self.r_t.hypot(self.h_t);
        LocalGeometry {
            weight: self.r.powi(n as i32 - 1) * speed,
            kappa_prof: (self.r_t * self.h_tt - self.h_t * self.r_tt) / speed.powi(3),
            kappa_rot: self.h_t / (self.r * speed),
            support: (-self.r * self.h_t + self.h * self.r_t) / speed,
        }
    }
}

/// A sampled profile on a uniform parameter grid.
///
/// Periodic closed profiles store the closing sample twice (first and last).
/// Profiles meeting the axis at both ends (`axis_ends`) store only the
/// interior nodes; the end nodes have zero area weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevolutionProfile {
    n: usize,
    closed: bool,
    axis_ends: bool,
    samples: Vec<ProfileSample>,
}

impl RevolutionProfile {
    pub fn new(n: usize, samples: Vec<ProfileSample>, closed: bool, axis_ends: bool) -> Result<Self> {
        if n < 2 {
            return Err(SolitonError::InvalidParameter(format!(
                "hypersurface dimension must be at least 2, got {n}"
            )));
        }
        if samples.len() < 3 {
            return Err(SolitonError::InvalidParameter(format!(
                "profile needs at least 3 samples, got {}",
                samples.len()
            )));
        }
        let dt = samples[1].t - samples[0].t;
        for (i, p) in samples.iter().enumerate() {
            if !(p.r > 0.0) {
                return Err(SolitonError::NonpositiveRadius { h: p.h, r: p.r });
            }
            if i > 0 && ((p.t - samples[i - 1].t) - dt).abs() > SPACING_TOL * dt.abs() {
                return Err(SolitonError::InvalidParameter(format!(
                    "parameter grid is not uniform at sample {i}"
                )));
            }
        }
        if !(dt > 0.0) {
            return Err(SolitonError::InvalidParameter("parameter must increase".into()));
        }
        if closed && !axis_ends {
            let (a, b) = (samples[0], samples[samples.len() - 1]);
            if (a.r - b.r).hypot(a.h - b.h) > CLOSURE_TOL {
                return Err(SolitonError::NotClosed);
            }
        }
        Ok(Self {
            n,
            closed,
            axis_ends,
            samples,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    pub fn step(&self) -> f64 {
        self.samples[1].t - self.samples[0].t
    }

    /// Simpson values for `f`, padded with the zero-weight axis ends.
    pub(crate) fn quadrature_nodes(&self, f: impl Fn(&ProfileSample) -> f64) -> Vec<f64> {
        let mut vals: Vec<f64> = self.samples.iter().map(f).collect();
        if self.axis_ends {
            vals.insert(0, 0.0);
            vals.push(0.0);
        }
        vals
    }

    /// Round sphere of radius `radius` about the origin, `intervals` even.
    pub fn sphere(n: usize, radius: f64, intervals: usize) -> Result<Self> {
        Self::ellipsoid(n, radius, radius, intervals)
    }

    /// Ellipsoid of revolution with semi-axis `a` across and `b` along the axis.
    pub fn ellipsoid(n: usize, a: f64, b: f64, intervals: usize) -> Result<Self> {
        check_shape(&[a, b], intervals)?;
        let dt = PI / intervals as f64;
        let samples = (1..intervals)
            .map(|k| {
                let t = k as f64 * dt;
                let (s, c) = t.sin_cos();
                ProfileSample {
                    t,
                    r: a * s,
                    h: b * c,
                    r_t: a * c,
                    h_t: -b * s,
                    r_tt: -a * s,
                    h_tt: -b * c,
                }
            })
            .collect();
        Self::new(n, samples, true, true)
    }

    /// Torus of revolution: a circle of radius `a` centred at distance
    /// `center > a` from the axis.
    pub fn torus(n: usize, center: f64, a: f64, intervals: usize) -> Result<Self> {
        check_shape(&[center, a], intervals)?;
        if !(a < center) {
            return Err(SolitonError::InvalidParameter(format!(
                "torus tube radius {a} must be below the centre distance {center}"
            )));
        }
        let dt = TAU / intervals as f64;
        let samples = (0..=intervals)
            .map(|k| {
                let t = if k == intervals { TAU } else { k as f64 * dt };
                let (s, c) = t.sin_cos();
                ProfileSample {
                    t,
                    r: center + a * c,
                    h: a * s,
                    r_t: -a * s,
                    h_t: a * c,
                    r_tt: -a * c,
                    h_tt: -a * s,
                }
            })
            .collect();
        Self::new(n, samples, true, false)
    }

    /// Every point multiplied by `lambda > 0`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(SolitonError::InvalidParameter(format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        let samples = self
            .samples
            .iter()
            .map(|p| ProfileSample {
                t: p.t,
                r: lambda * p.r,
                h: lambda * p.h,
                r_t: lambda * p.r_t,
                h_t: lambda * p.h_t,
                r_tt: lambda * p.r_tt,
                h_tt: lambda * p.h_tt,
            })
            .collect();
        Self::new(self.n, samples, self.closed, self.axis_ends)
    }
}

fn check_shape(lengths: &[f64], intervals: usize) -> Result<()> {
    if lengths.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(SolitonError::InvalidParameter(format!(
            "shape lengths must be positive, got {lengths:?}"
        )));
    }
    if intervals < 4 || intervals % 2 != 0 {
        return Err(SolitonError::InvalidParameter(format!(
            "need an even number (>= 4) of intervals, got {intervals}"
        )));
    }
    Ok(())
}
