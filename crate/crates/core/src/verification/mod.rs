//! Integral and pointwise geometric identities used as independent checks.

pub mod clifford;
pub mod minkowski;
pub mod profile;

pub use clifford::{clifford_expander_residual, clifford_mean_curvature_defect, TorusGrid};
pub use minkowski::{
    compact_soliton_constant_check, minkowski_first_identity, minkowski_first_with_weight,
    minkowski_second_identity, ConstantCheck,
};
pub use profile::{ProfileSample, RevolutionProfile};
