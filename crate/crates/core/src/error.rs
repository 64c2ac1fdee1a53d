use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("coordinate count mismatch: expected {expected}, got {got}")]
    CoordinateMismatch { expected: usize, got: usize },

    #[error("{what} cap exceeded: limit {limit}, needed {needed}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        needed: usize,
    },

    #[error("cyclotomic order ceiling exceeded: needed {needed}, ceiling {ceiling}")]
    CyclotomicCeiling { needed: u32, ceiling: u32 },

    #[error("mixed cyclotomic orders: {left} vs {right}")]
    MixedOrders { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix group input is invalid: {0}")]
    InvalidGroup(String),

    #[error("invalid group data: {0}")]
    InvalidAbelianGroup(String),

    #[error("quotient cone requires a torsion-free character group; {0}")]
    TorsionClassGroup(String),

    #[error("element does not lie in the ambient group: {0}")]
    NotInAmbient(String),

    #[error("oracle mismatch in {what}: {detail}")]
    OracleMismatch { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
