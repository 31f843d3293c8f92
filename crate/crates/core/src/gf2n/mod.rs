//! Exact arithmetic in GF(2^n) and in the cubic tower GF(2^n) ⊂ GF(2^{3n}).

mod embed;
mod field;
mod tower;

use thiserror::Error;

pub use embed::Embedding;
pub use field::{default_modulus, elem_arith, hex, ElemOp, Field, FieldElem, MAX_DEGREE};
pub use tower::{QForm, TowerField, MAX_BASE_DEGREE};

pub(crate) use field::parse_hex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} is outside the supported range 1..=24")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} has degree {got:?}, expected {expected}")]
    WrongDegree {
        modulus: u32,
        expected: u32,
        got: Option<u32>,
    },
    #[error("modulus {modulus:#x} is reducible: it is divisible by {factor:#x}")]
    Reducible { modulus: u32, factor: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("element {bits:#x} does not fit in GF(2^{n})")]
    ElementOutOfRange { bits: u32, n: u32 },
    #[error("GF(2^{sub}) is not a subfield of GF(2^{sup})")]
    NotSubfield { sub: u32, sup: u32 },
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid field spec `{0}` (expected `n` or `n:0xHEX`)")]
    BadSpec(String),
    #[error("invalid element literal `{0}` (expected `0xHEX`)")]
    BadLiteral(String),
}
