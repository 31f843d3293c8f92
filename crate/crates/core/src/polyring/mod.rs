//! Sparse exact polynomial arithmetic over binary fields: univariate
//! polynomials for f, L and tails, trivariate polynomials for the surface
//! polynomial and its divisors.

mod monomial;
mod text;
mod tri;
mod uni;

use thiserror::Error;

use crate::gf2n::FieldError;

pub use monomial::Monomial;
pub use text::{parse_tri, parse_uni, ParseError};
pub use tri::{Division, TriPoly};
pub use uni::{uni_ops, UniOp, UniPoly, UniValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient of {monomial} is not in the subfield")]
    NotInSubfield { monomial: Monomial },
    #[error("coefficient of x^{exponent} is not in the subfield")]
    NotInSubfieldUni { exponent: u32 },
    #[error("internal error: {0}")]
    Internal(&'static str),
}

/// Exhaustive permutation test of `f` over `field`.
pub fn is_permutation(f: &UniPoly, field: &crate::gf2n::Field) -> Result<bool, PolyError> {
    f.is_permutation(field)
}

/// True iff every exponent of `f` is zero or a power of two.
pub fn is_qaffine(f: &UniPoly) -> bool {
    f.is_qaffine()
}
