use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("path algebra is infinite-dimensional (paths survive beyond length {bound})")]
    InfiniteDimensional { bound: usize },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit law fails: {0}")]
    UnitLaw(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("module is not projective")]
    NotProjective,
    #[error("resolution did not terminate within cutoff {cutoff}")]
    ExceededCutoff { cutoff: usize },
    #[error("isomorphism test undecided: {0}")]
    UndecidedIsomorphism(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
