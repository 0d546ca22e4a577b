use thiserror::Error;

/// Errors raised by the exact-arithmetic constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by (z[{a}] - z[{b}])")]
    NotDivisible { a: usize, b: usize },
    #[error("rational function has a pole at epsilon = 0")]
    PoleAtZero,
    #[error("z[{a}] and z[{b}] coincide")]
    ZeroDenominator { a: usize, b: usize },
    #[error("polynomial is not symmetric in its variables: {0}")]
    NotSymmetric(String),
    #[error("polynomial is not in the tensor power: {0}")]
    NotTensorElement(String),
    #[error("zero polynomial has no weight")]
    ZeroPolynomial,
    #[error("level {level} is below the spread {spread} of the partition")]
    LevelTooLow { level: usize, spread: usize },
    #[error("polynomial is not SL_m-invariant: {0}")]
    NotInvariant(String),
    #[error("index {0} occurs twice")]
    DuplicateIndex(usize),
    #[error("invalid U-family: {0}")]
    InvalidFamily(String),
    #[error("the Phi map needs level > spread, got level = spread = {0}")]
    LevelEqualsSpread(usize),
    #[error("the Psi map needs a partition with positive spread")]
    SpreadZero,
    #[error("invalid sign word: {0}")]
    InvalidWord(String),
    #[error("polynomial is not lambda-symmetric: {0}")]
    NotLambdaSymmetric(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("mismatch: {lhs} != {rhs}")]
    Mismatch { lhs: String, rhs: String },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined (rank {rank} < {unknowns} unknowns)")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("no z value assigned to index {0}")]
    MissingZ(usize),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
