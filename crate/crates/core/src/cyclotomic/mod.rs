//! Exact arithmetic in cyclotomic fields `Q(ζ_N)` and linear algebra over
//! them: enough to run finite matrix groups at desk scale. Numbers are
//! residues in the power basis modulo the N-th cyclotomic polynomial.

mod matrix;
mod number;

pub use matrix::CycMatrix;
pub use number::{cyclotomic_polynomial, euler_phi, Cyclotomic};

/// Default ceiling for the working cyclotomic order when character
/// computations enlarge it.
pub const DEFAULT_CYCLOTOMIC_CEILING: u32 = 120;
