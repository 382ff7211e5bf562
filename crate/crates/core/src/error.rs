use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("circulant size {s} outside supported range 1..={max}")]
    ModulusOutOfRange { s: usize, max: usize },

    #[error("exponent {exponent} out of range for s = {s}")]
    ExponentOutOfRange { exponent: usize, s: usize },

    #[error("matrix entry at ({row}, {col}) is {value}, expected 0 or 1")]
    NotBinary { row: usize, col: usize, value: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid column selection: {0}")]
    InvalidColumnSet(String),

    #[error("need at least m + 1 = {} columns, matrix has {n}", m + 1)]
    TooFewColumns { m: usize, n: usize },

    #[error("column {column} has weight zero; k is undefined")]
    ZeroWeightColumn { column: usize },

    #[error("columns must be sorted by ascending weight")]
    NotSorted,

    #[error("average weight range is empty: t1 = {t1}, t2 = {t2}")]
    EmptyRange { t1: usize, t2: usize },

    #[error("parity-check submatrix on the selected columns is identically zero")]
    ZeroOnColumns,

    #[error("vector is not a nonzero codeword of the base code")]
    NotBaseCodeword,

    #[error("base code minimum distance must be at least 1, got {0}")]
    TrivialBaseCode(usize),

    #[error("dimension cap {cap} exceeds the hard limit of {max}")]
    DimCapTooLarge { cap: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
