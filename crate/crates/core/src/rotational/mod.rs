//! Rotational profile curves: integration across charts, shooting from the
//! axis, bottles and regime classification.

pub mod asymptote;
pub mod bottle;
pub mod classify;
pub mod integrate;
pub mod residual;
pub mod rhs;
pub mod shoot;
pub mod trajectory;

pub use asymptote::{estimate_asymptote, DEFAULT_TAIL_FRACTION};
pub use bottle::{
    barrier_monitor, build_infinite_bottle, BARRIER_SLOPE_FLOOR, BARRIER_TOL, build_infinite_bottle_with, check_bottle_data,
    critical_constant, merge_halves, BottleSolution,
};
pub use classify::{
    classify_hypercylinder_expander, classify_hypercylinder_expander_with,
    classify_hyperplane_expander, classify_hyperplane_expander_with, constant_band,
    Classification, ConstantBand,
};
pub use integrate::{integrate_profile, integrate_profile_with, AXIS_LAYER, AXIS_OFFSET};
pub use residual::{soliton_residual_rotational, RotationalResidual};
pub use rhs::{profile_rhs_arclength, profile_rhs_h_of_r, profile_rhs_r_of_h, rot_profile_residual};
pub use shoot::{
    axis_second_derivative, extrapolate_axis_curvature, shoot_from_axis,
    shoot_from_axis_exploratory, shoot_from_axis_with, AxisShot,
};
pub use trajectory::{
    Chart, ChartInterval, Direction, IntegrationOptions, ProfileIVP, ProfilePoint,
    ProfileTolerances, ProfileTrajectory, Span, StartChart, Termination,
};
