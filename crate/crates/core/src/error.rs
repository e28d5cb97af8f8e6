use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    PoleAtSpecialization,
    #[error("series belong to different rings")]
    RingMismatch,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("matrix dimension does not match the variable block ({expected} vs {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("need at least {needed} coefficients for a ({p},{q}) reconstruction, got {got}")]
    InsufficientCoefficients { p: usize, q: usize, needed: usize, got: usize },
    #[error("Pade linear system is singular (rank defect {rank_defect})")]
    SingularSystem { rank_defect: usize },
    #[error("guard coefficient {index} disagrees with the reconstructed rational function")]
    NoRationalForm { index: usize },
    #[error("denominator vanishes at the continuation point")]
    PoleAtContinuationPoint,
    #[error("brute-force enumeration limited to n <= {limit}, got n = {n}")]
    SizeLimit { n: usize, limit: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("joint eigenspace decomposition failed to split all eigenspaces")]
    DegenerateEigenspaces,
    #[error("class {class} has age {age}, expected 1")]
    AgeNotOne { class: usize, age: String },
    #[error("row {row} of the transform couples to class {class} of age != 1")]
    GradingViolation { row: usize, class: usize },
    #[error("fixed point has a zero tangent weight")]
    ZeroWeight,
    #[error("analytic continuation failed at x1-degree {degree}: {source}")]
    ContinuationFailure { degree: usize, source: Box<Error> },
    #[error("corollary comparison mismatch at x1-degree {degree}")]
    MismatchAt { degree: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
