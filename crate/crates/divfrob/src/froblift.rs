//! Chartwise Frobenius lifts modulo `p²`.
//!
//! On the chart where `y` is inverted, the lift sends `t ↦ t^p` and
//! `y ↦ y^p(1 + p·𝒫(t)·y^(-np)/n)` with `𝒫 = (f(t^p) - f(t)^p)/p`. On the
//! chart at infinity it sends `s ↦ s^p + p·v(s)` and
//! `z ↦ z^p(1 + p·b(s))`, where the pair `(v, b)` satisfies
//!
//! ```text
//! f₂(s)^p - f₂(s^p) = p·(v(s)·f₂′(s)^p - n·b(s)·f₂(s)^p)   in (Z/p²Z)[s].
//! ```
//!
//! The construction here is the deterministic one used throughout the
//! crate: a Bezout pair for `(f₂′, f₂)` is raised to the `p`-th power
//! coefficientwise and multiplied by the divided difference
//! `Q = (f₂^p - f₂(s^p))/p`. Two consequences carry the whole matrix
//! computation: `f₂^(p-1)` divides `v′ + s^(p-1)`, and the per-class
//! quotients `(s^(p-1) + v′)/f₂^a` are exact polynomials.

use crate::curve::{euclid_pj, DerivedParams};
use crate::modring::{
    exact_divide, fp_bezout, fp_pow, mod_inv, w1_divp, FpPoly, PolyError, W1Poly,
};
use thiserror::Error;

/// The computed lift data for one curve.
///
/// `dv = max{0, deg v - 2p}` is the truncation order: power-series inverses
/// of `f` taken modulo `t^(dv+1)` make every negative-exponent coefficient
/// in the matrix computation exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusLift {
    pub(crate) pcal: FpPoly,
    pub(crate) qlift: FpPoly,
    pub(crate) v: FpPoly,
    pub(crate) b: FpPoly,
    pub(crate) dv: u64,
}

impl FrobeniusLift {
    /// The divided difference `𝒫 = (f(t^p) - f(t)^p)/p` of the `y`-chart
    /// lift.
    pub fn pcal(&self) -> &FpPoly {
        &self.pcal
    }

    /// The divided difference `Q = (f₂^p - f₂(s^p))/p` of the chart at
    /// infinity.
    pub fn qlift(&self) -> &FpPoly {
        &self.qlift
    }

    /// The polynomial `v` with `F_V(s) = s^p + p·v(s)`.
    pub fn v(&self) -> &FpPoly {
        &self.v
    }

    /// The polynomial `b` with `F_V(z) = z^p(1 + p·b(s))`.
    pub fn b(&self) -> &FpPoly {
        &self.b
    }

    /// The truncation order `dv = max{0, deg v - 2p}`.
    pub fn dv(&self) -> u64 {
        self.dv
    }
}

/// Errors raised while constructing or checking a lift.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    /// The defining relation failed after construction. This signals an
    /// implementation bug, never invalid input.
    #[error("mod-p² lift identity failed: {detail}")]
    LiftIdentityFailed { detail: String },
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The divided difference `𝒫(t) = (f(t^p) - f(t)^p)/p` over `F_p`.
///
/// # Errors
///
/// Propagates [`PolyError::NotDivisibleByP`], which would indicate an
/// arithmetic bug; divisibility is guaranteed by Fermat.
pub fn pcal(curve: &DerivedParams) -> Result<FpPoly, PolyError> {
    let p = curve.p();
    let f = curve.f();
    w1_divp(&f.spread(p as usize).sub(&f.pow(p)))
}

/// The deterministic pair `(v, b)` for the chart at infinity.
///
/// Construction: `Q = (f₂^p - f₂(s^p))/p` over `F_p`; a Bezout pair
/// `u·f₂′ + w·f₂ = 1` at degree `l+1`; then `v = Q·u^p` and
/// `b = -n⁻¹·Q·w^p`, the `p`-th powers taken coefficientwise (over `F_p`
/// the `p`-th power of a polynomial only spreads its coefficients).
///
/// # Errors
///
/// [`LiftError::LiftIdentityFailed`] if the defining relation does not hold
/// afterwards — an implementation-bug signal, not an input failure.
pub fn vb_pair(curve: &DerivedParams) -> Result<(FpPoly, FpPoly), LiftError> {
    let (_, v, b) = vb_from_f2(curve.p(), curve.n(), curve.f2())?;
    Ok((v, b))
}

fn vb_from_f2(p: u64, n: u64, f2: &W1Poly) -> Result<(FpPoly, FpPoly, FpPoly), LiftError> {
    let qlift = w1_divp(&f2.pow(p).sub(&f2.spread(p as usize)))?;
    let f2_modp = f2.reduce_modp();
    let df2 = f2_modp.derivative();
    let (gcd, u, w) = fp_bezout(&df2, &f2_modp)?;
    if gcd != FpPoly::constant(p, 1) {
        return Err(LiftError::LiftIdentityFailed {
            detail: "f₂ and f₂′ are not coprime".to_string(),
        });
    }
    let v0 = u.spread(p as usize);
    let b0 = w.spread(p as usize);
    let v = qlift.mul(&v0);
    let neg_n_inv = p - mod_inv(n % p, p);
    let b = qlift.mul(&b0).mul_scalar(neg_n_inv);

    // Relation check, reduced mod p: both sides of the p² identity are
    // p·(something), so comparing the cofactors over F_p is exact.
    let lhs = v
        .mul(&df2.spread(p as usize))
        .sub(&b.mul(&f2_modp.spread(p as usize)).mul_scalar(n % p));
    if lhs != qlift {
        return Err(LiftError::LiftIdentityFailed {
            detail: "v·f₂′^p - n·b·f₂^p does not equal (f₂^p - f₂(s^p))/p".to_string(),
        });
    }
    Ok((qlift, v, b))
}

/// Computes the full lift data for a validated curve.
///
/// # Errors
///
/// [`LiftError::LiftIdentityFailed`] as in [`vb_pair`].
pub fn compute(curve: &DerivedParams) -> Result<FrobeniusLift, LiftError> {
    let pcal = pcal(curve)?;
    let (qlift, v, b) = vb_from_f2(curve.p(), curve.n(), curve.f2())?;
    let dv = (v.degree_i64() - 2 * curve.p() as i64).max(0) as u64;
    Ok(FrobeniusLift { pcal, qlift, v, b, dv })
}

/// The exact quotient `(s^(p-1) + v′(s)) / f₂(s)^a` for class `j`, where
/// `a` is the quotient of `p·j` by `n`.
///
/// Exactness holds because `f₂^(p-1)` divides `v′ + s^(p-1)` and `a < p`.
///
/// # Errors
///
/// [`PolyError::InexactDivision`] — an implementation-bug signal.
pub fn qcart(curve: &DerivedParams, lift: &FrobeniusLift, j: u64) -> Result<FpPoly, PolyError> {
    let p = curve.p();
    let (a, _) = euclid_pj(p, j, curve.n());
    let numerator = lift
        .v
        .derivative()
        .add(&FpPoly::monomial(p, 1, p as usize - 1));
    exact_divide(&numerator, &fp_pow(curve.f2_modp(), a))
}

/// The outcome of the three lift identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftReport {
    /// `f₂^p - f₂(s^p) = p·(v·f₂′^p - n·b·f₂^p)` in `(Z/p²Z)[s]`.
    pub relation_holds: bool,
    /// `f₂^(p-1)` divides `v′ + s^(p-1)` in `F_p[s]`.
    pub divisibility_holds: bool,
    /// `f(t^p) = f(t)^p + p·𝒫(t)` in `(Z/p²Z)[t]`.
    pub frobenius_consistent: bool,
}

impl LiftReport {
    /// Whether every identity holds.
    pub fn all_pass(&self) -> bool {
        self.relation_holds && self.divisibility_holds && self.frobenius_consistent
    }
}

/// Re-derives all three defining identities of a lift from scratch, in
/// `(Z/p²Z)[s]`, `F_p[s]`, and `(Z/p²Z)[t]` respectively, and reports which
/// hold. Failures are carried in the report, not raised.
pub fn check_lift(curve: &DerivedParams, lift: &FrobeniusLift) -> LiftReport {
    let p = curve.p();
    let n = curve.n();
    let f = curve.f();
    let f2 = curve.f2();
    let f2_modp = curve.f2_modp();

    let lhs = f2.pow(p).sub(&f2.spread(p as usize));
    let cofactor = lift
        .v
        .mul(&f2_modp.derivative().spread(p as usize))
        .sub(&lift.b.mul(&f2_modp.spread(p as usize)).mul_scalar(n % p));
    let relation_holds = lhs == W1Poly::lift(&cofactor).mul_scalar(p);

    let numerator = lift
        .v
        .derivative()
        .add(&FpPoly::monomial(p, 1, p as usize - 1));
    let (_, remainder) = numerator.divrem(&fp_pow(f2_modp, p - 1));
    let divisibility_holds = remainder.is_zero();

    let frobenius_consistent =
        f.spread(p as usize) == f.pow(p).add(&W1Poly::lift(&lift.pcal).mul_scalar(p));

    LiftReport {
        relation_holds,
        divisibility_holds,
        frobenius_consistent,
    }
}
