//! Input schema, orchestration and report emission for both regimes.
//!
//! The input is a JSON problem description (torus module or finite matrix
//! group); the output is a deterministic stratification report in JSON or
//! text. All rationals travel as `"p/q"` strings, never floats.

mod emit;
mod model;
mod run;
mod schema;

pub use emit::{emit, Format, ReportView};
pub use model::*;
pub use run::{run, RunConfig};
pub use schema::{parse, FiniteProblem, Options, ProblemKind, ProblemSpec, SchemaError, TorusProblem};

/// Stable CLI exit-code contract: 0 success, 2 schema error, 3 cap or
/// ceiling exceeded, 4 oracle mismatch. Schema errors are reported by
/// `parse`; this maps the run-stage errors.
pub fn exit_code_for(error: &crate::Error) -> u8 {
    match error {
        crate::Error::CapExceeded { .. } | crate::Error::CyclotomicCeiling { .. } => 3,
        crate::Error::OracleMismatch { .. } => 4,
        _ => 2,
    }
}
