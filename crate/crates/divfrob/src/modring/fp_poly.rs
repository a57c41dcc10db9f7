//! Dense polynomials over the prime field `F_p`.

use super::PolyError;

/// A dense polynomial over `F_p`, coefficients in ascending degree.
///
/// Invariants: every stored coefficient lies in `[0, p)` and the last stored
/// coefficient is nonzero; the zero polynomial stores no coefficients.
///
/// # Example
///
/// ```
/// use divfrob::modring::FpPoly;
///
/// // 3 + 2t + t^2 over F_5
/// let f = FpPoly::new(5, vec![3, 2, 1]);
/// assert_eq!(f.degree(), Some(2));
/// assert_eq!(f.coeff(1), 2);
/// assert_eq!(f.coeff(7), 0);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Creates a polynomial from coefficients in ascending degree, reducing
    /// each modulo `p` and trimming trailing zeros.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2);
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Creates a polynomial from signed integers, reducing into `[0, p)`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let m = p as i128;
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| ((c as i128).rem_euclid(m)) as u64)
                .collect(),
        )
    }

    /// The zero polynomial.
    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(p, coeffs)
    }

    /// The prime modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The coefficient slice, ascending degree, no trailing zeros.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The degree as a signed integer, with `-1` for the zero polynomial.
    /// Convenient in index arithmetic where sums run over `[lo, deg]`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `t^k`; zero for any `k` outside `[0, deg]`,
    /// including negative `k`.
    pub fn coeff(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// The leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Evaluates the polynomial at `x`.
    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let x = (x % self.p) as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u128) % p;
        }
        acc as u64
    }

    /// The sum `self + other`.
    ///
    /// # Panics
    ///
    /// Panics if the moduli differ.
    pub fn add(&self, other: &Self) -> Self {
        self.check_modulus(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = (self.coeff(k as i64) + other.coeff(k as i64)) % self.p;
        }
        let mut poly = Self { p: self.p, coeffs };
        poly.trim();
        poly
    }

    /// The difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The negation `-self`.
    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c == 0 { 0 } else { self.p - c })
                .collect(),
        }
    }

    /// The product `self · other` (schoolbook).
    pub fn mul(&self, other: &Self) -> Self {
        self.check_modulus(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        let p = self.p as u128;
        let mut poly = Self {
            p: self.p,
            coeffs: acc.into_iter().map(|c| (c % p) as u64).collect(),
        };
        poly.trim();
        poly
    }

    /// The scalar product `c · self`.
    pub fn mul_scalar(&self, c: u64) -> Self {
        let c = (c % self.p) as u128;
        let p = self.p as u128;
        let mut poly = Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| ((a as u128 * c) % p) as u64)
                .collect(),
        };
        poly.trim();
        poly
    }

    /// The formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut poly = Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| ((k as u128 % p) * c as u128 % p) as u64)
                .collect(),
        };
        poly.trim();
        poly
    }

    /// Truncation modulo `t^order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut poly = Self {
            p: self.p,
            coeffs: self.coeffs.iter().take(order).copied().collect(),
        };
        poly.trim();
        poly
    }

    /// Substitutes `t ↦ t^k`, spreading coefficient `c_i` to degree `k·i`.
    ///
    /// Over `F_p` with `k = p` this equals the `p`-th power of the
    /// polynomial, since `x ↦ x^p` is a ring endomorphism fixing `F_p`.
    pub fn spread(&self, k: usize) -> Self {
        assert!(k >= 1, "spread exponent must be positive");
        if self.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self { p: self.p, coeffs }
    }

    /// Euclidean division: returns `(q, r)` with `self = q·b + r` and
    /// `deg r < deg b`.
    ///
    /// # Panics
    ///
    /// Panics if `b` is zero or the moduli differ.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        self.check_modulus(b);
        assert!(!b.is_zero(), "division by the zero polynomial");
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p as u128;
        let lead_inv = mod_inv(*b.coeffs.last().unwrap(), self.p) as u128;
        let mut rem: Vec<u64> = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - db];
        for k in (db..self.coeffs.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = (c as u128 * lead_inv % p) as u64;
            quot[k - db] = q;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let sub = q as u128 * bc as u128 % p;
                let idx = k - db + j;
                rem[idx] = ((rem[idx] as u128 + p - sub) % p) as u64;
            }
        }
        let mut q = Self { p: self.p, coeffs: quot };
        let mut r = Self { p: self.p, coeffs: rem };
        q.trim();
        r.trim();
        (q, r)
    }

    fn check_modulus(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "operands live over different prime fields"
        );
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

/// The inverse of `a` modulo `m`, for `gcd(a, m) = 1`.
///
/// # Panics
///
/// Panics if `a` is not invertible modulo `m`.
pub fn mod_inv(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible modulo {m}");
    s0.rem_euclid(m as i128) as u64
}

/// Extended Euclid over `F_p[t]`: returns `(g, u, w)` with `u·a + w·b = g`
/// and `g` the monic gcd of `a` and `b`.
///
/// # Errors
///
/// - [`PolyError::ModulusMismatch`] if the operands' moduli differ.
/// - [`PolyError::BothZero`] if both operands are zero.
pub fn fp_bezout(a: &FpPoly, b: &FpPoly) -> Result<(FpPoly, FpPoly, FpPoly), PolyError> {
    if a.modulus() != b.modulus() {
        return Err(PolyError::ModulusMismatch {
            left: a.modulus(),
            right: b.modulus(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (FpPoly::constant(p, 1), FpPoly::zero(p));
    let (mut w0, mut w1) = (FpPoly::zero(p), FpPoly::constant(p, 1));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        (r0, r1) = (r1, r);
        let u_next = u0.sub(&q.mul(&u1));
        (u0, u1) = (u1, u_next);
        let w_next = w0.sub(&q.mul(&w1));
        (w0, w1) = (w1, w_next);
    }
    let scale = mod_inv(r0.leading_coeff().expect("gcd of nonzero pair is nonzero"), p);
    Ok((r0.mul_scalar(scale), u0.mul_scalar(scale), w0.mul_scalar(scale)))
}

/// The power-series inverse of `f` truncated at `t^order`, by Newton
/// doubling from the scalar inverse of the constant term: the result `I`
/// has `deg I < order` and `f·I ≡ 1 (mod t^order)`.
///
/// # Errors
///
/// [`PolyError::ConstantTermZero`] if `f(0) = 0`.
///
/// # Example
///
/// ```
/// use divfrob::modring::{trunc_inverse, FpPoly};
///
/// let f = FpPoly::from_signed(7, &[1, -1]); // 1 - t
/// let inv = trunc_inverse(&f, 3).unwrap();
/// assert_eq!(inv, FpPoly::new(7, vec![1, 1, 1])); // 1 + t + t^2
/// ```
pub fn trunc_inverse(f: &FpPoly, order: usize) -> Result<FpPoly, PolyError> {
    assert!(order >= 1, "truncation order must be positive");
    if f.coeff(0) == 0 {
        return Err(PolyError::ConstantTermZero);
    }
    let p = f.modulus();
    let two = FpPoly::constant(p, 2 % p);
    let mut inv = FpPoly::constant(p, mod_inv(f.coeff(0), p));
    let mut prec = 1usize;
    while prec < order {
        prec = (prec * 2).min(order);
        let correction = two.sub(&f.truncate(prec).mul(&inv));
        inv = inv.mul(&correction).truncate(prec);
    }
    Ok(inv)
}

/// Exact division `a / b`, where the caller guarantees divisibility.
///
/// # Errors
///
/// [`PolyError::InexactDivision`] if `b` does not divide `a`.
///
/// # Panics
///
/// Panics if `b` is zero.
pub fn exact_divide(a: &FpPoly, b: &FpPoly) -> Result<FpPoly, PolyError> {
    let (q, r) = a.divrem(b);
    if let Some(d) = r.degree() {
        return Err(PolyError::InexactDivision { remainder_degree: d });
    }
    Ok(q)
}

/// The power `a^e` by binary exponentiation, with `a^0 = 1`.
pub fn fp_pow(a: &FpPoly, e: u64) -> FpPoly {
    fp_pow_impl(a, e, None)
}

/// The power `a^e` truncated modulo `t^order` at every step.
///
/// Equals `fp_pow(a, e).truncate(order)` but avoids the intermediate degree
/// blowup.
pub fn fp_pow_trunc(a: &FpPoly, e: u64, order: usize) -> FpPoly {
    fp_pow_impl(a, e, Some(order))
}

fn fp_pow_impl(a: &FpPoly, e: u64, order: Option<usize>) -> FpPoly {
    let clip = |x: FpPoly| match order {
        Some(ord) => x.truncate(ord),
        None => x,
    };
    let mut result = FpPoly::constant(a.modulus(), 1);
    let mut base = clip(a.clone());
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = clip(result.mul(&base));
        }
        e >>= 1;
        if e > 0 {
            base = clip(base.mul(&base));
        }
    }
    result
}

/// The power `a^e` computed coefficient by coefficient from the relation
/// `a·(a^e)′ = e·a′·a^e`, in time linear in the output degree instead of
/// quadratic.
///
/// Indices divisible by the characteristic make the recurrence step a
/// division by zero over `F_p`, so the walk runs modulo `p^K` with enough
/// guard digits that every such division stays exact and the final
/// reduction modulo `p` is still correct. When `a(0)` is not a unit or
/// `p^K` does not fit in a machine word, the routine falls back to
/// [`fp_pow`].
pub fn fp_pow_recurrence(a: &FpPoly, e: u64) -> FpPoly {
    let p = a.modulus();
    let deg = match a.degree() {
        Some(d) if d > 0 && e > 1 && a.coeff(0) != 0 => d,
        _ => return fp_pow(a, e),
    };
    let out_deg = match e
        .checked_mul(deg as u64)
        .and_then(|d| usize::try_from(d).ok())
    {
        Some(d) => d,
        None => return fp_pow(a, e),
    };

    let mut guard = 1u64;
    let mut power_of_p = p;
    while power_of_p <= out_deg as u64 {
        guard += out_deg as u64 / power_of_p;
        match power_of_p.checked_mul(p) {
            Some(next) => power_of_p = next,
            None => break,
        }
    }
    let mut modulus = 1u64;
    for _ in 0..guard {
        match modulus.checked_mul(p) {
            Some(next) => modulus = next,
            None => return fp_pow(a, e),
        }
    }

    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % modulus as u128) as u64;
    let mut pow_of_constant = 1u64;
    let mut base = a.coeff(0);
    let mut exp = e;
    while exp > 0 {
        if exp & 1 == 1 {
            pow_of_constant = mul(pow_of_constant, base);
        }
        exp >>= 1;
        base = mul(base, base);
    }
    let inv_constant = mod_inv(a.coeff(0), modulus);

    let mut out = vec![0u64; out_deg + 1];
    out[0] = pow_of_constant;
    for m in 1..=out_deg {
        let mut num = 0u128;
        for w in 1..=deg.min(m) {
            let scale = ((e as i128 + 1) * w as i128 - m as i128).rem_euclid(modulus as i128);
            let term = mul(mul(scale as u64, a.coeff(w as i64)), out[m - w]);
            num += term as u128;
        }
        let mut num = (num % modulus as u128) as u64;
        let mut unit = m as u64;
        while unit % p == 0 {
            assert_eq!(num % p, 0, "guard precision exhausted at index {m}");
            num /= p;
            unit /= p;
        }
        out[m] = mul(num, mul(inv_constant, mod_inv(unit % modulus, modulus)));
    }
    FpPoly::new(p, out)
}
