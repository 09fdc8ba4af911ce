use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} exceeds the supported maximum of 1024")]
    DegreeTooLarge(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("repeated point {0}")]
    RepeatedPoint(usize),
    #[error("image table is not a bijection")]
    NotBijective,
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("derived series did not terminate within {0} steps")]
    DerivedSeriesTooLong(usize),
    #[error("unknown catalog group {0:?}")]
    UnknownCatalog(String),
    #[error("invalid catalog parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    GroupFile { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("0 has no prime factorization")]
    Zero,
    #[error("{0} is not squarefree")]
    NotSquarefree(u128),
    #[error("omega sets are only defined for threshold 3, graph uses {0}")]
    UnsupportedThreshold(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup order {0} is not a nontrivial prime power")]
    NotPrimePower(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}
