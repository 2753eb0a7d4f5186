use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinorError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("matrix has odd size {0}")]
    OddSize(usize),
    #[error("zero spinor")]
    ZeroSpinor,
    #[error("spinor is not pure")]
    NotPure,
    #[error("subspace is not maximal isotropic (dimension {dim}, expected {n})")]
    NotMaximal { dim: usize, n: usize },
    #[error("subspace is not totally isotropic")]
    NotIsotropic,
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("subspace lies in the odd component of the orthogonal Grassmannian")]
    WrongComponent,
    #[error("wrong parity: {0}")]
    WrongParity(&'static str),
    #[error("not in the secant variety: {0}")]
    NotInSecantVariety(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("constant term of coefficient {0} is nonzero")]
    NonzeroConstantTerm(String),
    #[error("monomial {0} does not contain the required factor")]
    MissingFactor(String),
    #[error("too few decompositions: found {found}, needed {needed}")]
    TooFewDecompositions { found: usize, needed: usize },
    #[error("spinors are projectively equal")]
    EqualInputs,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, SpinorError>;
