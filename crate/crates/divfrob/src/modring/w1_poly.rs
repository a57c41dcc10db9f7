//! Dense polynomials over `Z/p²Z`, the length-two Witt vectors of `F_p`.

use super::{FpPoly, PolyError};

/// A dense polynomial over `Z/p²Z`, coefficients in ascending degree.
///
/// Invariants: every stored coefficient lies in `[0, p²)` and the last
/// stored coefficient is nonzero; the zero polynomial stores no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W1Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl W1Poly {
    /// Creates a polynomial from coefficients in ascending degree, reducing
    /// each modulo `p²` and trimming trailing zeros.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2);
        let psq = p * p;
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % psq).collect(),
        };
        poly.trim();
        poly
    }

    /// Creates a polynomial from signed integers, reducing into `[0, p²)`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let psq = (p * p) as i128;
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| ((c as i128).rem_euclid(psq)) as u64)
                .collect(),
        )
    }

    /// Lifts an `F_p` polynomial coefficientwise into `[0, p) ⊂ [0, p²)`.
    pub fn lift(f: &FpPoly) -> Self {
        Self {
            p: f.modulus(),
            coeffs: f.coeffs().to_vec(),
        }
    }

    /// The zero polynomial.
    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    /// The prime `p` (the modulus is `p²`).
    pub fn prime(&self) -> u64 {
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

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `t^k`; zero outside `[0, deg]`.
    pub fn coeff(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// The sum `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        self.check_prime(other);
        let psq = self.p * self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u64; len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = (self.coeff(k as i64) + other.coeff(k as i64)) % psq;
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
        let psq = self.p * self.p;
        Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c == 0 { 0 } else { psq - c })
                .collect(),
        }
    }

    /// The product `self · other` (schoolbook).
    pub fn mul(&self, other: &Self) -> Self {
        self.check_prime(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let psq = (self.p * self.p) as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let cell = &mut acc[i + j];
                *cell += a as u128 * b as u128;
                // Keep partial sums below u128 overflow for large degrees.
                if *cell >= 1u128 << 124 {
                    *cell %= psq;
                }
            }
        }
        let mut poly = Self {
            p: self.p,
            coeffs: acc.into_iter().map(|c| (c % psq) as u64).collect(),
        };
        poly.trim();
        poly
    }

    /// The scalar product `c · self`.
    pub fn mul_scalar(&self, c: u64) -> Self {
        let psq = (self.p * self.p) as u128;
        let c = c as u128 % psq;
        let mut poly = Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| ((a as u128 * c) % psq) as u64)
                .collect(),
        };
        poly.trim();
        poly
    }

    /// The power `self^e` by binary exponentiation, with `self^0 = 1`.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::new(self.p, vec![1]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// The formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.p);
        }
        let psq = (self.p * self.p) as u128;
        let mut poly = Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| ((k as u128 % psq) * c as u128 % psq) as u64)
                .collect(),
        };
        poly.trim();
        poly
    }

    /// Substitutes `t ↦ t^k`, spreading coefficient `c_i` to degree `k·i`.
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

    /// Substitutes `t ↦ t + u` by Horner evaluation in `(Z/p²Z)[t]`.
    pub fn compose_shift(&self, u: u64) -> Self {
        let shift = Self::new(self.p, vec![u, 1]);
        let mut acc = Self::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::new(self.p, vec![c]));
        }
        acc
    }

    /// Reduces coefficientwise modulo `p`.
    pub fn reduce_modp(&self) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.clone())
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "operands live over different rings");
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

/// Inverts the multiplication-by-`p` bijection `F_p[t] → p·(Z/p²Z)[t]`:
/// returns the unique `h` over `F_p` with `g = p·h`.
///
/// # Errors
///
/// [`PolyError::NotDivisibleByP`] if some coefficient of `g` is not
/// divisible by `p`; this signals a violated hypothesis upstream, never bad
/// user input.
pub fn w1_divp(g: &W1Poly) -> Result<FpPoly, PolyError> {
    let p = g.prime();
    let mut coeffs = Vec::with_capacity(g.coeffs().len());
    for (degree, &c) in g.coeffs().iter().enumerate() {
        if c % p != 0 {
            return Err(PolyError::NotDivisibleByP { p, degree });
        }
        coeffs.push(c / p);
    }
    Ok(FpPoly::new(p, coeffs))
}
