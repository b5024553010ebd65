//! The Clifford torus `(1/√2)(cos u, sin u, cos v, sin v) ⊂ S³ ⊂ ℝ⁴` as a
//! spherical expander with `C = 1/2`.
//!
//! The induced metric is `(du² + dv²)/2`, so `Δ_g = 2(∂²_u + ∂²_v)` and
//! `H⃗ = Δ_g X = -2X`.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::error::{Result, SolitonError};

pub const MIN_RESOLUTION: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusGrid {
    resolution: usize,
    /// Row-major in `(u, v)`.
    points: Vec<[f64; 4]>,
}

impl TorusGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(SolitonError::InvalidParameter(format!(
                "torus grid needs resolution >= {MIN_RESOLUTION}, got {resolution}"
            )));
        }
        let step = TAU / resolution as f64;
        let mut points = Vec::with_capacity(resolution * resolution);
        for i in 0..resolution {
            let (su, cu) = (i as f64 * step).sin_cos();
            for j in 0..resolution {
                let (sv, cv) = (j as f64 * step).sin_cos();
                points.push([cu, su, cv, sv].map(|x| FRAC_1_SQRT_2 * x));
            }
        }
        Ok(Self { resolution, points })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn step(&self) -> f64 {
        TAU / self.resolution as f64
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 4] {
        let m = self.resolution;
        self.points[(i % m) * m + j % m]
    }

    pub fn points(&self) -> &[[f64; 4]] {
        &self.points
    }
}

fn norm(x: [f64; 4]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Max over the grid of `|-H⃗/|H⃗|² - X/2|` with `H⃗` from periodic second
/// differences. `X` is normal to `S³`, so `X^⊥ = X`.
pub fn clifford_expander_residual(grid: &TorusGrid) -> f64 {
    let m = grid.resolution();
    let k = 2.0 / (grid.step() * grid.step());
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let x = grid.point(i, j);
            let (e, w) = (grid.point(i + 1, j), grid.point(i + m - 1, j));
            let (nn, s) = (grid.point(i, j + 1), grid.point(i, j + m - 1));
            let hv: [f64; 4] = std::array::from_fn(|c| k * (e[c] + w[c] + nn[c] + s[c] - 4.0 * x[c]));
            let h2 = hv.iter().map(|c| c * c).sum::<f64>();
            let diff: [f64; 4] = std::array::from_fn(|c| -hv[c] / h2 - 0.5 * x[c]);
            worst = worst.max(norm(diff));
        }
    }
    worst
}

/// Max of `||H⃗| - 2|` with the exact `H⃗ = -2X`.
pub fn clifford_mean_curvature_defect(grid: &TorusGrid) -> f64 {
    grid.points()
        .iter()
        .map(|&x| (norm(x.map(|c| -2.0 * c)) - 2.0).abs())
        .fold(0.0, f64::max)
}
