//! Exact computation of divided-Frobenius matrices for superelliptic curves.
//!
//! Given a prime `p`, an exponent `n` coprime to `p`, and a separable
//! polynomial `f` of degree `l ≡ -1 (mod n)`, the curve `y^n = f(t)` over
//! `F_p` has genus `g = (l-1)(n-1)/2`. This crate computes the `2g × 2g`
//! matrix of the divided Frobenius — the mod-`p` isomorphism
//! `H⁰(Ω¹) ⊕ H¹(O) → H¹_dR` obtained by dividing the crystalline Frobenius
//! by `p` on the regular-differential half — entirely in exact arithmetic.
//!
//! The crate is organized as:
//!
//! - [`modring`]: dense polynomials over `F_p` and `Z/p²Z`, Bezout,
//!   truncated Newton inversion, and finite Laurent elements of the curve
//!   algebra.
//! - [`curve`]: hypothesis validation, derived invariants, cohomology bases,
//!   and index bookkeeping.
//! - [`froblift`]: chartwise Frobenius lifts modulo `p²` and their identity
//!   checks.
//! - [`blocks`]: closed-form column formulas for the four quadrants and
//!   matrix assembly.
//! - [`oracle`]: an independent structural evaluation pipeline used to
//!   cross-validate `blocks`, plus the classical hyperelliptic formula.
//! - [`cli`]: the command-line front end (job parsing, output formats,
//!   self-checks).
//!
//! Matrix entries are residues in `[0, p)`; every computation is exact, with
//! no floating point anywhere.

pub mod blocks;
pub mod chart;
pub mod cli;
pub mod curve;
pub mod froblift;
pub mod modring;
pub mod oracle;
