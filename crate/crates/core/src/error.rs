use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: n={n}, k={k}")]
    InvalidDiagram { n: usize, k: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("diagram ({small_n},{small_k}) is not a one-cell predecessor of ({big_n},{big_k})")]
    NotAdjacent {
        small_n: usize,
        small_k: usize,
        big_n: usize,
        big_k: usize,
    },
    #[error("shape mismatch: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid bit prefix: {0}")]
    InvalidPrefix(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("tables do not refine: {0}")]
    NotRefining(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
