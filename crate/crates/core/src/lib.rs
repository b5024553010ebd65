//! Self-similar solutions of the inverse mean curvature flow.
//!
//! Closed-form planar solitons and translators, rotational expander profiles
//! integrated from ODEs, integral-identity checks, and a small planar flow
//! simulator used to confirm self-similarity.

pub mod error;
pub mod flow;
pub mod geometry;
pub mod numeric;
pub mod ode;
pub mod plane;
pub mod rotational;
pub mod types;
pub mod verification;

pub use error::{Result, SolitonError};
pub use geometry::{CurveSample, PlaneCurve, Vec2};
pub use numeric::{finite_diff_second, hausdorff_distance};
pub use types::{Event, EventTag, Regime, SolitonKind, SolitonSpec};
