use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-homogeneous potential: term {term:?} has degree {found}, expected {expected}")]
    NonHomogeneous {
        term: String,
        expected: i64,
        found: i64,
    },
    #[error("degree k = 0 is not allowed")]
    ZeroDegree,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("resultant of two constants is undefined")]
    ConstantResultant,
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("mixed quadratic radicands {0} and {1}")]
    MixedRadicands(String, String),
    #[error("not an eigen-direction of the gradient: {0}")]
    NotEigenDirection(String),
    #[error("improper Darboux point (gradient vanishes): {0}")]
    ImproperDarboux(String),
    #[error("{0} is not an eigenvalue")]
    NotEigenvalue(String),
    #[error("row {row} is not defined for k = {k}")]
    IncompatibleRow { row: u8, k: i64 },
    #[error("parameter p = {p} is excluded in row {row}")]
    ExcludedParameter { row: u8, p: i64 },
    #[error("conflicting table memberships: {0}")]
    ConflictingMatches(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
