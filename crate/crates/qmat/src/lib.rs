//! Exact symbolic computation in the quantum coordinate rings of matrices.
//!
//! The algebra `O_q(M_{m,n})` is generated by `Y[i,a]` (`1 <= i <= m`,
//! `1 <= a <= n`) over the field `Q(q)` with `q` a formal parameter, subject to
//!
//! ```text
//! Y[i,b]*Y[i,a] = q^-1 * Y[i,a]*Y[i,b]                          (a < b)
//! Y[j,a]*Y[i,a] = q^-1 * Y[i,a]*Y[j,a]                          (i < j)
//! Y[j,b]*Y[i,a] = Y[i,a]*Y[j,b]                                 (i < j, a > b)
//! Y[j,b]*Y[i,a] = Y[i,a]*Y[j,b] - (q - q^-1)*Y[i,b]*Y[j,a]      (i < j, a < b)
//! ```
//!
//! All computation is exact: coefficients are Laurent polynomials in `q` over
//! the rationals, and equality always means coefficient-by-coefficient
//! identity.  There is no numerical `q` anywhere.
//!
//! Module map:
//!
//! - [`scalars`]: Laurent polynomials in `q` over `Q`, formal ratios, and
//!   exact integer linear algebra (rank, kernel, minor gcds).
//! - [`pbw`]: elements of `O_q(M_{m,n})` in normal form, straightening
//!   multiplication, gradings, and the q-normality test.
//! - [`minors`]: quantum minors, the quantum determinant, the staircase
//!   family `b_1, ..., b_{m+n-1}` of q-normal elements, and their
//!   q-commutation exponents.
//! - [`torus`]: the associated quantum affine space on generators `T[i,a]`,
//!   its commutation matrix `B`, the bicharacter pairing, and the center of
//!   the corresponding quantum torus.
//! - [`restoration`]: reconstruction of the `Y[i,a]` inside the torus from
//!   the `T[i,a]`, with relation and staircase-monomial verification.
//! - [`spectrum`]: the primitivity criterion for the zero ideal, the
//!   dimension of the zero stratum, the height-one prime catalog, and the
//!   normal generators built from a polynomial in the central variables.
//! - [`morphisms`]: algebra maps given by generator images — scalar torus
//!   automorphisms, transposition, and the exceptional automorphism of the
//!   1 x 3 algebra.
//! - [`document`] / [`expr`]: JSON element documents and the text syntax for
//!   polynomials in the central variables.
//! - [`verify`]: the named verification suites driven by `qmat verify`.

pub mod document;
pub mod expr;
pub mod minors;
pub mod morphisms;
pub mod pbw;
pub mod restoration;
pub mod scalars;
pub mod spectrum;
pub mod torus;
pub mod verify;

/// Errors reported by the library.
///
/// `InvalidInput` covers malformed arguments (bad shapes, indices out of
/// range, non-unit scalars where units are required, malformed documents);
/// `Parse` carries a byte offset into the offending source text;
/// `CheckFailed` means a mathematical verification did not hold.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn check(msg: impl Into<String>) -> Error {
        Error::CheckFailed(msg.into())
    }
}

pub use pbw::{MatElement, Shape};
pub use scalars::{QLaurent, QRatio, Rational};
pub use torus::TorusElement;
