//! Exact algorithms for Luna stratifications of quotient spaces.
//!
//! The library has two computational regimes sharing one report format:
//!
//! * quasitorus modules, given by a character group and a weight multiset,
//!   handled with exact integer/rational lattice and polyhedral algorithms;
//! * finite matrix groups over cyclotomic fields, handled with invariant-ring
//!   linear algebra.
//!
//! Everything is exact: arbitrary-precision integers and rationals, no
//! floating point anywhere.

pub mod abelian;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod invariant;
pub mod oracle;
pub mod polyhedral;
pub mod report;
pub mod torus;

pub use error::{Error, Result};
