//! Exact scalar arithmetic and integer linear algebra.
//!
//! Coefficients throughout the crate are Laurent polynomials in `q` with
//! rational coefficients ([`QLaurent`]).  Proportionality questions are
//! settled by [`ql_proportional`], which produces a reduced formal ratio and
//! never divides in a field of fractions.  [`IntMatrix`] supplies the exact
//! integer matrix operations needed for commutation matrices: rank by
//! fraction-free elimination, primitive integer kernel bases, and gcds of
//! maximal minors.

mod intmatrix;
mod qlaurent;

pub use intmatrix::IntMatrix;
pub use qlaurent::{ql_proportional, QLaurent, QRatio};

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rational = num::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num::BigInt;

/// The rational `p/r`.  Panics if `r == 0`.
pub fn rat(p: i64, r: i64) -> Rational {
    Rational::new(Integer::from(p), Integer::from(r))
}

/// The rational `n/1`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(Integer::from(n))
}
