use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer for {what}, got {value}")]
    NonPositive { what: &'static str, value: i64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("coefficient list of length {0} is not triangular (n(n+1)/2)")]
    NotTriangular(usize),

    #[error("quadratic form must have an even number of variables, got {0}")]
    OddDimension(usize),

    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,

    #[error("level computations disagree: cofactor formula gives {cofactor}, direct search gives {direct}")]
    LevelMismatch { cofactor: u64, direct: u64 },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("conductor {conductor} does not divide modulus {modulus}")]
    ConductorMismatch { conductor: u64, modulus: u64 },

    #[error("non-real characters required modulo {0}")]
    NonRealCharacters(u64),

    #[error("complex pairs possible at level {level} (prime {prime})")]
    ComplexPairsPossible { level: u64, prime: u64 },

    #[error("character {0} is not primitive")]
    Imprimitive(String),

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("invalid Eisenstein triple: {0}")]
    InvalidEisenstein(String),

    #[error("invalid eta product: {0}")]
    InvalidEta(String),

    #[error("linear system is inconsistent on coefficients 0..={0}")]
    Inconsistent(u64),

    #[error("residual mismatch at n = {0}")]
    ResidualMismatch(u64),

    #[error("underdetermined: rank {rank} < {columns} generators")]
    Underdetermined { rank: usize, columns: usize },

    #[error("precision {have} is below the required {need}")]
    Precision { have: u64, need: u64 },

    #[error("unresolved cusp label `{0}`")]
    UnresolvedCusp(String),

    #[error("no catalog formula for {0}")]
    UnknownFormula(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
