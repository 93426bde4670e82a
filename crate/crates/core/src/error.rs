use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("ragged point list: expected length {expected}, found {found}")]
    RaggedPoints { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polytope is {dim}-dimensional in ambient dimension {ambient}; a full-dimensional polytope is required")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("residue class {residue} has {found} distinct sample points, {needed} are needed")]
    InsufficientSamples {
        residue: usize,
        needed: usize,
        found: usize,
    },

    #[error("samples are inconsistent with a quasi-polynomial of degree {degree} and period {period}")]
    InconsistentSamples { degree: usize, period: usize },

    #[error("validation mismatch at dilation {k}: counted {counted}, quasi-polynomial predicts {predicted}")]
    ValidationMismatch {
        k: u64,
        counted: String,
        predicted: String,
    },

    #[error("leading coefficient has period {period}, expected a constant")]
    PeriodViolation { period: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shift search exceeded its budget; last tried {last:?}")]
    SearchBudgetExceeded { last: Vec<u64> },

    #[error("facet validation failed: {0}")]
    FacetValidation(String),

    #[error("integer overflow in counting kernel")]
    Overflow,
}
