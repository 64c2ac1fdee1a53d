//! Graded invariant and semiinvariant rings of finite matrix groups:
//! Molien series, Reynolds operators, minimal generators, relations up to a
//! degree bound, and class-group-graded Cox presentations.
//!
//! No Groebner bases anywhere: within a fixed degree, membership in a
//! subalgebra span is a linear-algebra question, which suffices for minimal
//! generators and for relation spaces up to a bound. Completeness of the
//! relation ideal is never claimed; reports say "relations up to degree D".

mod generators;
mod poly;
mod ring;

pub use generators::{
    cox_presentation_finite, minimal_generators, minimal_generators_graded, relations,
    subalgebra_dims, CoxBounds, FormalPoly, GradedRingPresentation, RingGenerator,
};
pub use poly::{monomials_of_degree, Monomial, Poly};
pub use ring::{invariant_basis, molien_series, reynolds, trivial_character, GroupAction};
