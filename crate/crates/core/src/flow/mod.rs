//! Explicit evolution of plane curves by inverse curve shortening flow,
//! `X_t = -H⃗/|H⃗|² = -(1/κ) N`, used to check self-similarity empirically.

pub mod similarity;
pub mod step;

pub use similarity::{
    best_fit_dilation, best_fit_translation, self_similarity_check, self_similarity_check_with,
    padded_range, sliding_range, strip_distance, translator_flow_check, SelfSimilarity, TranslatorFlow,
    BOUNDARY_STRIP, FLOW_SAMPLES,
};
pub use step::{
    flow_step, flow_until, resample, resample_uniform, stable_step, FlowState, ResamplePolicy,
    Spacing, CFL_FACTOR, MAX_HALVINGS,
};
