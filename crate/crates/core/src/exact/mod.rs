//! Exact arithmetic: rationals, univariate polynomials, cyclotomic numbers and
//! binary forms with cyclotomic coefficients.

mod cyclo;
mod form;
pub mod linalg;
mod poly;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloNum};
pub use form::BiForm;
pub use poly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
