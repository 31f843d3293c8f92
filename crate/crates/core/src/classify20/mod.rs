//! Degree-20 classification: the two divisibility families, exact replay of
//! the quotient ledger for the first one, and CCZ witnesses to x^5.

mod divisibility;
mod families;
mod replay;
mod witness;

use thiserror::Error;

use crate::apn::ApnError;
use crate::gf2n::FieldError;
use crate::polyring::PolyError;

pub use divisibility::{
    norm_product, p1_polynomial, search_p1, verify_divisibility_a, verify_divisibility_b,
    Constraint, DivisibilityA, DivisibilityB, P1Divisor, MAX_SEARCH_DEGREE,
};
pub use families::{
    build_family_a, build_family_b, family_a_linear, FamilyAParams, FamilyBParams,
};
pub use replay::{appendix1_replay, CoeffCheck, ReplayReport, SliceCheck};
pub use witness::{
    apn_exclusion_evidence, ccz_witness, default_check_field, CczOutcome, CczWitness,
    DeltaCheck, ExclusionEvidence, NoWitness, WitnessKind, MAX_CHECK_DEGREE,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("tr(c1) = {0} is nonzero")]
    NonzeroTrace(String),
    #[error("tail {0} is not q-affine")]
    TailNotQAffine(String),
    #[error("expected a degree-20 polynomial, got degree {0:?}")]
    NotDegree20(Option<u32>),
    #[error("P1 search needs |ext| <= 2^{max}, got 2^{0}", max = MAX_SEARCH_DEGREE)]
    ExtTooLarge(u32),
    #[error("search hit c1 = {0} has nonzero trace")]
    TraceViolated(String),
    #[error("{0} does not have coefficients in the base field")]
    NotOverBase(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Apn(#[from] ApnError),
}
