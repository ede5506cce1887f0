use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("braided integer needs m >= 0, got {0}")]
    NegativeBraidedInteger(i64),

    #[error("operator shape mismatch: {0}")]
    Shape(String),

    #[error("invalid leg placement: {0}")]
    Legs(String),

    #[error("operator is singular")]
    Singular,

    /// The fraction-free inverse exists over Q(q) but `adj / det` leaves
    /// `Z[q, q^-1]`; `det` is the obstruction.
    #[error("inverse is not Laurent: determinant {det} does not divide the adjugate")]
    NonLaurentInverse { det: String },

    #[error("sample hits a pole: {0}")]
    Pole(String),

    #[error("non-PBW Hecke input: {0}")]
    NonPbw(String),

    #[error("index {index} out of range for n = {n}")]
    Index { index: usize, n: usize },

    #[error("rewrite budget of {budget} steps exceeded while reducing {word}")]
    BudgetExceeded { budget: u64, word: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("shift b_0 is not a supported operator")]
    ZeroShift,

    #[error("malformed input: {0}")]
    Format(String),
}
