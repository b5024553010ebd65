//! One-dimensional homothetic solitons and translators.

pub mod curvature_law;
pub mod homothetic;
pub mod translator;

pub use curvature_law::{curvature_law_check, CurvatureLawParams, CurvatureLawReport};
pub use homothetic::{
    find_support_zero, homothetic_curve_patch, homothetic_curve_point, homothetic_residual,
    sample_homothetic_curve, support_function, HomotheticCurveParams, Support, ThetaRange,
};
pub use translator::{
    cycloid_point, cycloid_translator, integrate_translator_curve, sample_cycloid,
    tilt_frame, tilted_cycloid_point_scaled, tilted_cycloid_surface_point, tilted_laplacian_x3,
    tilted_translator_scale, translator_residual, unit_speed_cycloid, CycloidPoint,
    CYCLOID_RADIUS,
};
