use thiserror::Error;

/// Errors raised by the linear-algebra, channel and representation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    Empty,

    #[error("entry count {found} does not match shape {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector length {0} is not a perfect square")]
    NonSquareLength(usize),

    #[error("matrix side {0} is not a perfect square")]
    NonSquareSide(usize),

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("dimension mismatch{}: expected {expected}x{expected}, found {found:?}", at_index(.index))]
    DimensionMismatch {
        expected: usize,
        found: (usize, usize),
        index: Option<usize>,
    },

    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e}, tolerance {tolerance:e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not unitary (max |u u^dagger - I| = {0:e})")]
    NotUnitary(f64),

    #[error("Kraus operator set is empty")]
    EmptyKrausSet,

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("parameter `{0}` is already fixed")]
    ParameterAlreadyFixed(String),

    #[error("expected {expected} parameter values, found {found}")]
    ParameterCount { expected: usize, found: usize },

    #[error("parameter `{name}` = {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: String,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("basis is not orthonormal (max Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("basis must contain {expected} elements of size {dim}x{dim}, found {found}")]
    BasisSize {
        dim: usize,
        expected: usize,
        found: usize,
    },

    #[error("supermatrix is expressed in a different basis than the one supplied")]
    BasisMismatch,
}

fn at_index(index: &Option<usize>) -> String {
    match index {
        Some(i) => format!(" at index {i}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
