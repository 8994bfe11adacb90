use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("permanent size {0} exceeds the naive-sum guard (8)")]
    PermanentTooLarge(usize),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("split {k} out of range 0..={n}")]
    SplitOutOfRange { k: usize, n: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degenerate request: {0}")]
    Degenerate(String),
    #[error("supermatrix is not even")]
    NotEven,
    #[error("matrix is singular")]
    Singular,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("inconsistent input: {0}")]
    Inconsistency(String),
    #[error("map is not an automorphism of the pair: {0}")]
    NotAutomorphism(String),
    #[error("power dimension {0} exceeds the guard ({1})")]
    PowerTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
