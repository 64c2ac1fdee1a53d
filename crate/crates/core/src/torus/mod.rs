//! The quasitorus regime: Luna strata of a weight module, admissibility,
//! class groups, polynomial Cox presentations, quotient cones and the
//! boundary-singularity scan.
//!
//! Strata are keyed by the character subgroup generated by a balanced
//! support; the isotropy subgroup itself is never materialized as a group of
//! points. The character group of the quasitorus may have torsion; the
//! convex-geometry predicates act on free parts, subgroup generation on the
//! full group.

mod boundary;
mod module;
mod strata;

pub use boundary::{boundary_singularity_report, BoundaryReport, BoundaryStatus, FaceVerdict};
pub use module::{Weight, WeightModule};
pub use strata::{
    class_group, cox_presentation, enumerate_strata, is_admissible, quotient_cone,
    weyl_weight_matrix, AdmissibilityCertificate, ClassGroupResult, CoxGenerator, Stratum,
    TorusCoxPresentation,
};

/// Default cap on the number of distinct weights; subset enumeration is
/// exponential.
pub const DEFAULT_WEIGHT_CAP: usize = 16;
