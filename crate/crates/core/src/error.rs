use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("weights must all be even, got {0:?}")]
    OddWeights(Vec<i64>),

    #[error("need at least {min} weights, got {got}")]
    TooFewWeights { min: usize, got: usize },

    #[error("{count} weights exceed the subset-enumeration cap of {cap}")]
    SubsetCapExceeded { count: usize, cap: usize },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("partition {0:?} is not admissible")]
    NotAdmissible(Vec<i64>),

    #[error("partition {nu:?} is outside the domain: {reason}")]
    OutsideDomain { nu: Vec<i64>, reason: String },

    #[error("degenerate weights: {0}")]
    DegenerateWeights(String),

    #[error("Hilbert polynomial does not match h({degree}): expected {expected}, got {got}")]
    PolynomialMismatch { degree: u64, expected: String, got: String },

    #[error("degree formula gives {formula} but the Hilbert polynomial gives {polynomial}")]
    DegreeMismatch { formula: String, polynomial: String },

    #[error("numerator coefficient at degree {degree} is nonzero; (1-z)^{exponent} is not the right denominator")]
    WrongDenominator { degree: usize, exponent: usize },

    #[error("truncation degree {degree} is below the required {required}")]
    TruncationTooLow { degree: usize, required: usize },

    #[error("constant term is not a unit, series cannot be inverted over the integers")]
    NotInvertible,

    #[error("polytope is unbounded in coordinate {0}")]
    Unbounded(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {0:?} does not lie in the even lattice")]
    NotInLattice(Vec<i64>),

    #[error("point {point:?} is not in {level}P_w")]
    NotInPolytope { point: Vec<i64>, level: u64 },

    #[error("normal decomposition failed at level {level} for {point:?}")]
    NormalityViolation { point: Vec<i64>, level: u64 },

    #[error("{0} is not a lattice point of P_w")]
    UnknownVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{count} variables exceed the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
}
