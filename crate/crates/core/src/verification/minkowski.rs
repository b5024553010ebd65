//! Hsiung-Minkowski integrals and the closed-soliton constant.

use serde::{Deserialize, Serialize};

use super::profile::{LocalGeometry, RevolutionProfile};
use crate::error::{Result, SolitonError};
use crate::numeric::simpson;

/// Area-normalized `∫ (1 + (1/n)⟨X, H⃗⟩) dΣ`.
pub fn minkowski_first_identity(profile: &RevolutionProfile) -> Result<f64> {
    minkowski_first_with_weight(profile, 1.0 / profile.n() as f64)
}

/// `∫ (1 + w ⟨X, H⃗⟩) dΣ / |Σ|`; the identity holds only for `w = 1/n`.
pub fn minkowski_first_with_weight(profile: &RevolutionProfile, w: f64) -> Result<f64> {
    let n = profile.n();
    averaged(profile, |g| 1.0 + w * g.mean_curvature(n) * g.support)
}

/// Area-normalized `∫ (H/n + (σ₂/binom(n,2)) ⟨X, ν⟩) dΣ`, i.e. the second
/// identity written with `(σ₂/H)⟨X, H⃗⟩ = σ₂⟨X, ν⟩` and normalized symmetric
/// functions. For surfaces `binom(2,2) = 1`.
pub fn minkowski_second_identity(profile: &RevolutionProfile) -> Result<f64> {
    let n = profile.n();
    check_mean_curvature(profile)?;
    let pairs = (n * (n - 1)) as f64 / 2.0;
    averaged(profile, |g| {
        g.mean_curvature(n) / n as f64 + g.sigma2(n) / pairs * g.support
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantCheck {
    /// Area average of `-H⟨X, ν⟩`, the implied `1/C`.
    pub mean: f64,
    /// Max of `|-H⟨X, ν⟩ - mean|` over the samples.
    pub max_deviation: f64,
}

/// For a closed rotational soliton `-H⟨X, ν⟩ = 1/C` is constant.
pub fn compact_soliton_constant_check(profile: &RevolutionProfile) -> Result<ConstantCheck> {
    let n = profile.n();
    check_closed(profile)?;
    check_mean_curvature(profile)?;
    let mut values = Vec::with_capacity(profile.samples().len());
    for p in profile.samples() {
        let g = p.local(n);
        let v = -g.mean_curvature(n) * g.support;
        if !(v > 0.0) {
            return Err(SolitonError::NotASoliton { t: p.t, value: v });
        }
        values.push(v);
    }
    let mean = averaged(profile, |g| -g.mean_curvature(n) * g.support)?;
    let max_deviation = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    Ok(ConstantCheck { mean, max_deviation })
}

fn check_closed(profile: &RevolutionProfile) -> Result<()> {
    if profile.is_closed() {
        Ok(())
    } else {
        Err(SolitonError::NotClosed)
    }
}

/// `H` must keep one strict sign along the profile.
fn check_mean_curvature(profile: &RevolutionProfile) -> Result<()> {
    let n = profile.n();
    let first = profile.samples()[0].local(n).mean_curvature(n).signum();
    for p in profile.samples() {
        let h = p.local(n).mean_curvature(n);
        if h == 0.0 || h.signum() != first {
            return Err(SolitonError::MeanCurvatureVanishes { t: p.t });
        }
    }
    Ok(())
}

fn averaged(profile: &RevolutionProfile, f: impl Fn(&LocalGeometry) -> f64) -> Result<f64> {
    check_closed(profile)?;
    let n = profile.n();
    let dt = profile.step();
    let num = simpson(
        &profile.quadrature_nodes(|p| {
            let g = p.local(n);
            g.weight * f(&g)
        }),
        dt,
    )?;
    let area = simpson(&profile.quadrature_nodes(|p| p.local(n).weight), dt)?;
    Ok(num / area)
}
