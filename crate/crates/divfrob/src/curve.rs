//! Curve hypotheses, derived invariants, and cohomology-basis bookkeeping.
//!
//! A valid input is a prime `p`, an exponent `n ≥ 2` coprime to `p`, and a
//! polynomial `f` over `Z/p²Z` such that, writing `l = deg f`:
//!
//! - `l ≡ -1 (mod n)`, `l ≥ 2`, and `p ∤ l`;
//! - the leading coefficient of `f` is a unit;
//! - `f mod p` is separable (`gcd(f, f′) = 1`);
//! - `f(0) ≠ 0 (mod p)`.
//!
//! The curve `yⁿ = f(t)` then has genus `g = (l-1)(n-1)/2`, and the two
//! cohomology spaces carry the monomial bases enumerated here: regular
//! differentials `ω_{i,j} = tⁱ dt/yʲ` and structure-sheaf classes
//! `h_{i,j} = y^j/tⁱ`.

use crate::modring::{fp_bezout, FpPoly, W1Poly};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Raw curve input: the identity of a curve is `(p, n, f mod p²)`.
///
/// Coefficients are accepted as arbitrary signed integers (ascending degree)
/// and reduced modulo `p²` during validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    /// The prime characteristic.
    pub p: u64,
    /// The superelliptic exponent `n` in `yⁿ = f(t)`.
    pub n: u64,
    /// Coefficients of `f`, ascending degree.
    pub f: Vec<i64>,
}

impl CurveParams {
    /// Bundles raw parameters; all checking happens in [`validate`].
    pub fn new(p: u64, n: u64, f: Vec<i64>) -> Self {
        Self { p, n, f }
    }
}

/// A validated curve together with its derived invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParams {
    p: u64,
    n: u64,
    f: W1Poly,
    f2: W1Poly,
    f_modp: FpPoly,
    f2_modp: FpPoly,
    l: u64,
    r: u64,
    g: u64,
}

impl DerivedParams {
    /// The prime characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The superelliptic exponent.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `f` over `Z/p²Z`.
    pub fn f(&self) -> &W1Poly {
        &self.f
    }

    /// The chart-at-infinity polynomial `f₂(s) = f(1/s)·s^(l+1)` over
    /// `Z/p²Z`: coefficients are `f` reversed into degrees `1..=l+1`, with
    /// `f₂(0) = 0`.
    pub fn f2(&self) -> &W1Poly {
        &self.f2
    }

    /// `f mod p`.
    pub fn f_modp(&self) -> &FpPoly {
        &self.f_modp
    }

    /// `f₂ mod p`.
    pub fn f2_modp(&self) -> &FpPoly {
        &self.f2_modp
    }

    /// The degree `l` of `f`.
    pub fn l(&self) -> u64 {
        self.l
    }

    /// The integer `r = (l+1)/n`.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The genus `g = (l-1)(n-1)/2`.
    pub fn g(&self) -> u64 {
        self.g
    }
}

/// Which cohomology space a basis element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    /// Regular differentials `H⁰(Ω¹)`.
    H0,
    /// Structure-sheaf cohomology `H¹(O)`.
    H1,
}

/// One basis element: `ω_{i,j} = tⁱ dt/yʲ` in `H⁰` (with `0 ≤ i ≤ rj-2`) or
/// `h_{i,j} = y^j/tⁱ` in `H¹` (with `1 ≤ i ≤ rj-1`), where `1 ≤ j ≤ n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    /// The cohomology space.
    pub block: Block,
    /// The `y`-index `j ∈ [1, n-1]`.
    pub j: u64,
    /// The `t`-index.
    pub i: u64,
}

impl BasisElement {
    /// The `H⁰` element `ω_{i,j}`.
    pub fn omega(i: u64, j: u64) -> Self {
        Self { block: Block::H0, j, i }
    }

    /// The `H¹` element `h_{i,j}`.
    pub fn h(i: u64, j: u64) -> Self {
        Self { block: Block::H1, j, i }
    }

    /// The isotypic class of the element under the `y`-grading: `j` for
    /// `ω_{i,j}`, and `n-j` for `h_{i,j}` (whose monomial carries `y^j`, a
    /// class dual to `y^{n-j}` on the differential side).
    pub fn iso_class(&self, n: u64) -> u64 {
        match self.block {
            Block::H0 => self.j,
            Block::H1 => n - self.j,
        }
    }

    /// A compact monomial label, e.g. `t^2*y^-2*dt` for `ω_{2,2}` and
    /// `t^-3*y^2` for `h_{3,2}`.
    pub fn label(&self) -> String {
        match self.block {
            Block::H0 => {
                let t = match self.i {
                    0 => String::new(),
                    1 => "t*".to_string(),
                    i => format!("t^{i}*"),
                };
                format!("{t}y^-{}*dt", self.j)
            }
            Block::H1 => {
                let y = match self.j {
                    1 => "y".to_string(),
                    j => format!("y^{j}"),
                };
                format!("t^-{}*{y}", self.i)
            }
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Errors raised while validating curve parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    /// `p` is not a prime number.
    #[error("p = {p} is not prime")]
    NotPrime { p: u64 },
    /// `p` is too large for exact arithmetic in 64-bit words.
    #[error("p = {p} exceeds the supported range (p² must fit in 64 bits)")]
    PrimeTooLarge { p: u64 },
    /// `n` does not satisfy `n ≥ 2`.
    #[error("exponent n = {n} must be at least 2")]
    ExponentTooSmall { n: u64 },
    /// `gcd(n, p) ≠ 1`.
    #[error("exponent n = {n} is not coprime to p = {p}")]
    NNotCoprimeToP { n: u64, p: u64 },
    /// `deg f < 2` (including `f ≡ 0`).
    #[error("deg f = {l} is too small; the curve needs deg f ≥ 2")]
    DegreeTooSmall { l: u64 },
    /// `deg f ≢ -1 (mod n)`.
    #[error("deg f = {l} must be ≡ -1 (mod n = {n})")]
    BadDegreeResidue { l: u64, n: u64 },
    /// `p | deg f`.
    #[error("deg f = {l} is divisible by p = {p}")]
    DegreeDivisibleByP { l: u64, p: u64 },
    /// The leading coefficient of `f` is not a unit modulo `p`.
    #[error("leading coefficient {coeff} of f is divisible by p = {p}")]
    LeadingCoeffNotUnit { coeff: u64, p: u64 },
    /// `gcd(f, f′) ≠ 1` modulo `p`.
    #[error("f mod p is not separable (gcd(f, f') ≠ 1)")]
    NotSeparable,
    /// `f(0) ≡ 0 (mod p)`, so the two standard charts do not cover the
    /// curve.
    #[error(
        "f(0) ≡ 0 (mod p); shift the variable first (shift_to_unit finds u \
         with f(u) ≠ 0 and returns f(t+u))"
    )]
    RootAtZero,
    /// `f` vanishes at every point of `F_p`; no shift can help over the
    /// prime field.
    #[error("f vanishes on all of F_{p}; no shift t ↦ t+u works over F_{p}")]
    NoShiftExists { p: u64 },
}

/// Checks every curve hypothesis and computes the derived invariants.
///
/// # Errors
///
/// One [`CurveError`] per violated hypothesis, checked in the order: prime,
/// range, exponent, degree conditions, leading coefficient, separability,
/// root at zero.
///
/// # Example
///
/// ```
/// use divfrob::curve::{validate, CurveParams};
///
/// // f = (t-1)(t-2)(t-3)(t-4)(t-5), p = 17, n = 3
/// let params = CurveParams::new(17, 3, vec![-120, 274, -225, 85, -15, 1]);
/// let curve = validate(&params).unwrap();
/// assert_eq!((curve.l(), curve.r(), curve.g()), (5, 2, 4));
/// ```
pub fn validate(params: &CurveParams) -> Result<DerivedParams, CurveError> {
    let p = params.p;
    if !is_prime(p) {
        return Err(CurveError::NotPrime { p });
    }
    if p >= 1 << 31 {
        return Err(CurveError::PrimeTooLarge { p });
    }
    let n = params.n;
    if n < 2 {
        return Err(CurveError::ExponentTooSmall { n });
    }
    if n % p == 0 {
        return Err(CurveError::NNotCoprimeToP { n, p });
    }

    let f = W1Poly::from_signed(p, &params.f);
    let l = match f.degree() {
        Some(l) if l >= 2 => l as u64,
        other => {
            return Err(CurveError::DegreeTooSmall {
                l: other.unwrap_or(0) as u64,
            })
        }
    };
    if (l + 1) % n != 0 {
        return Err(CurveError::BadDegreeResidue { l, n });
    }
    if l % p == 0 {
        return Err(CurveError::DegreeDivisibleByP { l, p });
    }
    let lead = f.coeff(l as i64);
    if lead % p == 0 {
        return Err(CurveError::LeadingCoeffNotUnit { coeff: lead, p });
    }

    let f_modp = f.reduce_modp();
    let (gcd, _, _) = fp_bezout(&f_modp, &f_modp.derivative())
        .expect("f is nonzero, so the gcd is defined");
    if gcd.degree() != Some(0) {
        return Err(CurveError::NotSeparable);
    }
    if f_modp.eval(0) == 0 {
        return Err(CurveError::RootAtZero);
    }

    let mut f2_coeffs = vec![0u64; l as usize + 2];
    for k in 1..=(l as usize + 1) {
        f2_coeffs[k] = f.coeff((l as usize + 1 - k) as i64);
    }
    let f2 = W1Poly::new(p, f2_coeffs);
    let f2_modp = f2.reduce_modp();

    let r = (l + 1) / n;
    let g = (l - 1) * (n - 1) / 2;
    Ok(DerivedParams {
        p,
        n,
        f,
        f2,
        f_modp,
        f2_modp,
        l,
        r,
        g,
    })
}

/// Finds the smallest `u ∈ {0, …, p-1}` with `f(u) ≠ 0 (mod p)` and returns
/// `(u, f(t+u) mod p²)`.
///
/// The shift is never applied implicitly by [`validate`]; callers decide
/// whether to move their curve.
///
/// # Errors
///
/// [`CurveError::NoShiftExists`] if `f` vanishes at every point of `F_p`
/// (resolvable only by a field extension, which is out of scope).
pub fn shift_to_unit(p: u64, f: &W1Poly) -> Result<(u64, W1Poly), CurveError> {
    debug_assert!(is_prime(p));
    let f_modp = f.reduce_modp();
    for u in 0..p {
        if f_modp.eval(u) != 0 {
            return Ok((u, f.compose_shift(u)));
        }
    }
    Err(CurveError::NoShiftExists { p })
}

/// The Euclidean division `p·j = a·n + b` with `1 ≤ b ≤ n-1`.
///
/// `b` is never zero when `gcd(p, n) = 1` and `1 ≤ j ≤ n-1`, and the map
/// `j ↦ b` is then a bijection on `{1, …, n-1}`.
///
/// # Panics
///
/// Panics if `j` is out of range or `n | p·j`; both are programming errors,
/// not data errors.
pub fn euclid_pj(p: u64, j: u64, n: u64) -> (u64, u64) {
    assert!(j >= 1 && j < n, "class index j = {j} out of range for n = {n}");
    let (a, b) = (p * j / n, p * j % n);
    assert!(b != 0, "p·j divisible by n; p and n are not coprime");
    (a, b)
}

/// Enumerates the `2g` basis elements in filtration order: all of `H⁰`
/// sorted by `(j, i)` ascending, then all of `H¹` sorted by `(j, i)`
/// ascending.
///
/// Empty index ranges (classes `j` with `rj - 2 < 0` or `rj - 1 < 1`)
/// contribute no elements.
pub fn enumerate_basis(curve: &DerivedParams) -> Vec<BasisElement> {
    let (n, r) = (curve.n, curve.r);
    let mut basis = Vec::with_capacity(2 * curve.g as usize);
    for j in 1..n {
        if r * j >= 2 {
            for i in 0..=(r * j - 2) {
                basis.push(BasisElement::omega(i, j));
            }
        }
    }
    for j in 1..n {
        for i in 1..=(r * j).saturating_sub(1) {
            basis.push(BasisElement::h(i, j));
        }
    }
    debug_assert_eq!(basis.len() as u64, 2 * curve.g);
    basis
}

/// The permutation regrouping the filtration basis by isotypic class: for
/// each `j = 1..n-1` in turn, the `H⁰` elements of class `j` followed by
/// the `H¹` elements `h_{·, n-j}` (which carry the same class), giving
/// `n-1` groups of `l-1` indices each.
///
/// Entry `k` of the result is the filtration index of the `k`-th reordered
/// element; applying it to rows and columns of a filtration-ordered matrix
/// (`M'[r][c] = M[perm[r]][perm[c]]`) produces the grouped presentation.
pub fn isotypic_permutation(curve: &DerivedParams) -> Vec<usize> {
    let basis = enumerate_basis(curve);
    let n = curve.n;
    let mut perm = Vec::with_capacity(basis.len());
    for class in 1..n {
        for (idx, elem) in basis.iter().enumerate() {
            if elem.iso_class(n) == class {
                perm.push(idx);
            }
        }
    }
    debug_assert_eq!(perm.len(), basis.len());
    perm
}

/// Deterministic primality test by trial division; `p` stays below `2³¹`
/// for every supported curve, so this is never a bottleneck.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
