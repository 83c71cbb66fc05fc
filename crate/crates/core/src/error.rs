use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} out of range (expected 2..=8)")]
    GroundSetSize(usize),

    #[error("invalid CI statement: {0}")]
    InvalidStatement(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("input is not a semigraphoid")]
    NotSemigraphoid,

    #[error("semigraphoid is submodular; no infeasibility certificate exists")]
    Submodular,

    #[error("exhaustive enumeration is limited to n <= 4 (got n = {0})")]
    EnumerationTooLarge(usize),

    #[error("fiber degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("imset has no nonnegative level decomposition")]
    InfeasibleLevels,

    #[error("move is zero")]
    ZeroMove,

    #[error("move is not in the kernel of A")]
    NotInKernel,

    #[error("class {0} is not the set of linear extensions of a poset")]
    NotPreConvex(String),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    Empty,

    #[error("position {0} out of range")]
    Position(usize),

    #[error("internal verification failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
