//! Exact rational polyhedral predicates.
//!
//! Feasibility questions are decided by an exact rational simplex with
//! Bland's rule; extreme rays of orthant-intersected subspaces come from the
//! double description method. No tolerances, no floating point.

mod cone;
mod lp;

pub use cone::{extreme_rays, face_orbit_smooth, faces, is_smooth_cone, saturate_rows, Cone};
pub use lp::{
    feasible_eq_nonneg, in_nonneg_span, positive_combination_zero_with, relint_contains_zero,
};
