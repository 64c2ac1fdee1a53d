//! Exact integer linear algebra and finitely generated abelian groups.
//!
//! Hermite and Smith normal forms over arbitrary-precision integers, kernel
//! lattices, canonical forms for subgroups of `Z^r ⊕ ⊕ Z/d_i`, and
//! invariant-factor structure computations. All conventions are pinned so
//! canonical forms are byte-stable across runs: row-style upper-echelon HNF
//! with positive pivots and entries above each pivot reduced into
//! `[0, pivot)`; SNF diagonal entries nonnegative with zero factors last.

mod group;
mod matrix;

pub use group::{
    quotient_structure, subgroup_from, subgroup_structure, CharacterSubgroup, ClCoordinateMap,
    FgAbelianGroup,
};
pub use matrix::{
    express_in_hnf_basis, hnf, hnf_with_transform, kernel_basis, rank, snf, IntMat, Snf,
};
