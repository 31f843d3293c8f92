//! Classification machinery for degree-20 APN polynomials over GF(2^n).

pub mod gf2n;
pub mod polyring;
pub mod phi;
pub mod apn;
pub mod classify20;
pub mod divisors;
pub mod cli;
