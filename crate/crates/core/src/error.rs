use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("rank {0} outside the supported range 1..=8")]
    RankOutOfRange(usize),
    #[error("elements live in different contexts")]
    ContextMismatch,
    #[error("overlapping index sets in a sign computation")]
    OverlappingSubsets,
    #[error("matrix is singular over F_p")]
    SingularMatrix,
    #[error("matrix dimension {got} does not match rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("repeated index {0} in a Milnor composite")]
    RepeatedIndex(usize),
    #[error("element is not homogeneous")]
    MixedDegree,
    #[error("exact division failed; irreducible remainder term {witness}")]
    NotDivisible { witness: String },
    #[error("division by zero or by a non-polynomial element")]
    BadDivisor,
    #[error("degree slice of dimension {dim} exceeds the budget {budget}")]
    BudgetExceeded { dim: usize, budget: usize },
    #[error("split index {ell} out of range for rank {n}")]
    SplitIndexOutOfRange { ell: usize, n: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(
        "bookkeeping contradiction: negative coefficient {value} at degree {degree} in {what}"
    )]
    NegativeDimension {
        what: String,
        degree: usize,
        value: i64,
    },
    #[error("shift identity failed at degree {degree}: {what}")]
    ShiftMismatch { what: String, degree: usize },
    #[error("image class {label} is not invariant in degree {degree}")]
    NotInvariant { label: String, degree: usize },
    #[error("image class {label} has degree {got}, declared {expected}")]
    ImageDegree {
        label: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("root datum {label} fails the Coxeter relation for ({i}, {j})")]
    CoxeterRelation { label: String, i: usize, j: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
