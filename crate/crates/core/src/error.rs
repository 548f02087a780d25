use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime in [3, 2^31]")]
    InvalidModulus(u64),

    #[error("polynomial is identically zero")]
    IdenticallyZero,

    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("enumeration too large: {size} exceeds budget {budget}")]
    EnumerationTooLarge { size: u128, budget: u64 },

    #[error("algebra is not nilpotent (lower central series stabilizes at dimension {0})")]
    NotNilpotent(usize),

    #[error("algebra fails the Lie axioms: {0}")]
    InvalidAlgebra(String),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("span is not closed under the bracket")]
    NotClosed,

    #[error("gluing subspace is not central in the {0} factor")]
    NotCentral(&'static str),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sumset stalled at {reached} of {total} points after {rounds} rounds")]
    SumsetStalled {
        reached: usize,
        total: usize,
        rounds: usize,
    },

    #[error("{0}")]
    Document(String),
}
