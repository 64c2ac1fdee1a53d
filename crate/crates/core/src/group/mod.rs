//! Finite matrix groups over cyclotomic fields: closure of a generated
//! group, pseudoreflection detection, commutant and abelianization with
//! character lists, and Luna strata from the fixed-subspace arrangement.

mod engine;
mod strata;
mod subspace;

pub use engine::{Abelianization, Character, FiniteGroup};
pub use strata::{strata, FiniteStratum, StrataOptions};
pub use subspace::Subspace;

/// Default cap on the closure size.
pub const DEFAULT_ORDER_CAP: usize = 1000;
/// Default cap on the number of arrangement intersections.
pub const DEFAULT_ARRANGEMENT_CAP: usize = 4096;
