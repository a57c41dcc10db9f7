//! Exact dense-polynomial arithmetic over `F_p` and `Z/p²Z`.
//!
//! This module provides:
//! - [`FpPoly`]: dense polynomials over the prime field `F_p`
//! - [`W1Poly`]: dense polynomials over the ring `Z/p²Z`
//! - [`LaurentGraded`]: finite-support elements of the curve algebra
//!   `F_p[[t]][t⁻¹][y]/(yⁿ - f)`, graded by the `y`-exponent
//! - Bezout, truncated Newton inversion, exact division, and the
//!   divide-by-`p` bijection between `p·(Z/p²Z)[t]` and `F_p[t]`
//!
//! Out-of-range coefficient access returns zero throughout; every closed-form
//! sum in [`crate::blocks`] relies on that convention.

mod fp_poly;
mod laurent;
mod w1_poly;

pub use fp_poly::{
    exact_divide, fp_bezout, fp_pow, fp_pow_recurrence, fp_pow_trunc, mod_inv, trunc_inverse,
    FpPoly,
};
pub use laurent::LaurentGraded;
pub use w1_poly::{w1_divp, W1Poly};

use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The two operands live over different moduli.
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    /// The gcd of two zero polynomials is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    /// A power-series inverse was requested for a polynomial with zero
    /// constant term.
    #[error("constant term is zero; the polynomial has no power-series inverse")]
    ConstantTermZero,
    /// A coefficient was expected to be divisible by `p` but is not. This
    /// signals a violated hypothesis upstream (for example a wrong
    /// Frobenius-twist computation), never bad user input.
    #[error("coefficient of degree {degree} is not divisible by {p}")]
    NotDivisibleByP { p: u64, degree: usize },
    /// A division that was guaranteed to be exact left a remainder.
    #[error("division left a nonzero remainder of degree {remainder_degree}")]
    InexactDivision { remainder_degree: usize },
}
