use crate::rotational::ProfileTrajectory;

/// Errors raised by the soliton constructions, integrators and checks.
#[derive(Debug, thiserror::Error)]
pub enum SolitonError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve has no samples")]
    EmptyCurve,

    #[error("stencil index {index} out of range for {len} samples")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("support function vanishes near theta = {theta:e}")]
    SupportVanishes { theta: f64 },

    #[error("curvature vanishes at sample {index}")]
    ZeroCurvature { index: usize },

    #[error("cusp of the cycloid at parameter {t}")]
    CuspPoint { t: f64 },

    #[error("nonpositive radius r = {r} at h = {h}")]
    NonpositiveRadius { h: f64, r: f64 },

    #[error("support quantity r - h r' vanishes at (h, r) = ({h}, {r})")]
    SupportDegenerate { h: f64, r: f64 },

    #[error("adaptive step {step:e} below minimum at (h, r) = ({h}, {r})")]
    StepUnderflow { h: f64, r: f64, step: f64 },

    #[error("constant C = {c_const} is outside the classified regime C > 1/n = {bound}")]
    OutsideStatedRegime { c_const: f64, bound: f64 },

    #[error("{0}")]
    BottleHypothesisViolated(String),

    #[error("barrier monitor decreased by {violation:e} (relative) at h = {h}")]
    BarrierViolated { h: f64, violation: f64 },

    #[error("span too small to classify: {reason}")]
    SpanTooSmall {
        reason: String,
        partial: Box<ProfileTrajectory>,
    },

    #[error("trajectory contradicts the predicted regime: {0}")]
    ClassificationMismatch(String),

    #[error("profile does not bound a closed hypersurface")]
    NotClosed,

    #[error("mean curvature vanishes at parameter t = {t}")]
    MeanCurvatureVanishes { t: f64 },

    #[error("-H<X,N> = {value} is not positive at t = {t}")]
    NotASoliton { t: f64, value: f64 },

    #[error("curvature changes sign at time {time} near ({x}, {y})")]
    CurvatureDegenerate { time: f64, x: f64, y: f64 },
}

pub type Result<T, E = SolitonError> = std::result::Result<T, E>;
