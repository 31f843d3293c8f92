//! The surface polynomial φ_f, the elementary symmetric basis, and the
//! built-in identity suite.

mod identities;
mod surface;
mod sym;

pub use identities::{
    builtin_all, builtin_identity, check_identity, IdentityError, IdentityParams,
    IdentityReport, NamedIdentity, Statement, BUILTIN_NAMES,
};
pub use surface::{phi_monomial, phi_numerator, phi_of, plane_product};
pub use sym::{elementary_tri, power_sum, to_symmetric, NotSymmetric, SymPoly};
