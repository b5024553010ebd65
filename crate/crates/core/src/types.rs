//! Soliton descriptions, trajectory events and qualitative regimes.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};

/// Which soliton equation a geometry is meant to satisfy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SolitonKind {
    /// Homothetic plane curve with speed constant `c != 0`.
    HomotheticCurve { c: f64 },
    /// Rotational hypersurface in `R^{n+1}` with soliton constant `C > 0`.
    RotationalHomothetic {
        n: usize,
        #[serde(rename = "C")]
        c_const: f64,
    },
    /// Translator with velocity `V` (2 or 3 components, nonzero).
    Translator { velocity: Vec<f64> },
}

/// Validated [`SolitonKind`]. Construction goes through checked
/// constructors, including deserialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SolitonKind", into = "SolitonKind")]
pub struct SolitonSpec {
    kind: SolitonKind,
}

impl SolitonSpec {
    pub fn homothetic_curve(c: f64) -> Result<Self> {
        Self::try_from(SolitonKind::HomotheticCurve { c })
    }

    pub fn rotational(n: usize, c_const: f64) -> Result<Self> {
        Self::try_from(SolitonKind::RotationalHomothetic { n, c_const })
    }

    pub fn translator(velocity: &[f64]) -> Result<Self> {
        Self::try_from(SolitonKind::Translator {
            velocity: velocity.to_vec(),
        })
    }

    pub fn kind(&self) -> &SolitonKind {
        &self.kind
    }

    /// `(n, C)` for rotational specs.
    pub fn rotational_params(&self) -> Option<(usize, f64)> {
        match self.kind {
            SolitonKind::RotationalHomothetic { n, c_const } => Some((n, c_const)),
            _ => None,
        }
    }
}

impl TryFrom<SolitonKind> for SolitonSpec {
    type Error = SolitonError;

    fn try_from(kind: SolitonKind) -> Result<Self> {
        match &kind {
            SolitonKind::HomotheticCurve { c } => {
                if !(c.is_finite() && *c != 0.0) {
                    return Err(SolitonError::InvalidParameter(format!(
                        "curve speed constant must be finite and nonzero, got {c}"
                    )));
                }
            }
            SolitonKind::RotationalHomothetic { n, c_const } => {
                if *n < 2 {
                    return Err(SolitonError::InvalidParameter(format!(
                        "hypersurface dimension must be >= 2, got {n}"
                    )));
                }
                if !(c_const.is_finite() && *c_const > 0.0) {
                    return Err(SolitonError::InvalidParameter(format!(
                        "soliton constant C must be finite and positive, got {c_const}"
                    )));
                }
            }
            SolitonKind::Translator { velocity } => {
                if !(velocity.len() == 2 || velocity.len() == 3) {
                    return Err(SolitonError::InvalidParameter(format!(
                        "translator velocity must have 2 or 3 components, got {}",
                        velocity.len()
                    )));
                }
                let norm = velocity.iter().map(|v| v * v).sum::<f64>().sqrt();
                if !(norm.is_finite() && norm > 0.0) {
                    return Err(SolitonError::InvalidParameter(
                        "translator velocity must be finite and nonzero".into(),
                    ));
                }
            }
        }
        Ok(Self { kind })
    }
}

impl From<SolitonSpec> for SolitonKind {
    fn from(s: SolitonSpec) -> Self {
        s.kind
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventTag {
    Inflection,
    ChartSwitch,
    AxisApproach,
    DerivativeBlowUp,
    AsymptoteDetected,
    MaxSpanReached,
}

/// Tagged occurrence along a profile trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub tag: EventTag,
    pub h: f64,
    pub r: f64,
    pub data: Option<f64>,
}

impl Event {
    pub fn new(tag: EventTag, h: f64, r: f64, data: Option<f64>) -> Self {
        Self { tag, h, r, data }
    }

    pub fn location(&self) -> (f64, f64) {
        (self.h, self.r)
    }
}

/// Qualitative behaviour of a rotational expander profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime")]
pub enum Regime {
    ConstantCylinder,
    BottleBetweenCylinders { r_bot: f64, r_top: f64, h1: f64 },
    ConvergesToCylinder { r_top: f64 },
    UnboundedRadius,
    ClosesToAxis { h1: f64 },
    MinAtOriginUnbounded { h1: f64 },
    MaxAtOriginClosesToAxis { h1: f64 },
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::ConstantCylinder => "ConstantCylinder",
            Regime::BottleBetweenCylinders { .. } => "BottleBetweenCylinders",
            Regime::ConvergesToCylinder { .. } => "ConvergesToCylinder",
            Regime::UnboundedRadius => "UnboundedRadius",
            Regime::ClosesToAxis { .. } => "ClosesToAxis",
            Regime::MinAtOriginUnbounded { .. } => "MinAtOriginUnbounded",
            Regime::MaxAtOriginClosesToAxis { .. } => "MaxAtOriginClosesToAxis",
        }
    }

    /// Inflection height carried by the regime, if any.
    pub fn h1(&self) -> Option<f64> {
        match *self {
            Regime::BottleBetweenCylinders { h1, .. }
            | Regime::ClosesToAxis { h1 }
            | Regime::MinAtOriginUnbounded { h1 }
            | Regime::MaxAtOriginClosesToAxis { h1 } => Some(h1),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_enforce_invariants() {
        assert!(SolitonSpec::homothetic_curve(0.0).is_err());
        assert!(SolitonSpec::homothetic_curve(-1.0).is_ok());
        assert!(SolitonSpec::rotational(1, 1.0).is_err());
        assert!(SolitonSpec::rotational(2, 0.0).is_err());
        assert!(SolitonSpec::rotational(2, 0.7).is_ok());
        assert!(SolitonSpec::translator(&[0.0, 0.0]).is_err());
        assert!(SolitonSpec::translator(&[0.0, 1.0, 0.0, 0.0]).is_err());
        assert!(SolitonSpec::translator(&[0.0, 1.0]).is_ok());
    }

    #[test]
    fn deserialization_validates() {
        let ok: SolitonSpec =
            serde_json::from_str(r#"{"kind":"RotationalHomothetic","n":3,"C":0.5}"#).unwrap();
        assert_eq!(ok.rotational_params(), Some((3, 0.5)));
        let bad = serde_json::from_str::<SolitonSpec>(r#"{"kind":"HomotheticCurve","c":0.0}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn regime_round_trips_through_json() {
        let regimes = [
            Regime::ConstantCylinder,
            Regime::BottleBetweenCylinders {
                r_bot: 0.5,
                r_top: 1.5,
                h1: -0.3,
            },
            Regime::ClosesToAxis { h1: 0.1 + 0.2 },
            Regime::UnboundedRadius,
        ];
        for r in regimes {
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<Regime>(&s).unwrap(), r);
        }
    }
}
