//! Finite-support elements of the curve algebra `F_p[[t]][t⁻¹][y]/(yⁿ - f)`.

use super::FpPoly;

/// One `y`-class of a [`LaurentGraded`] element: a finite Laurent polynomial
/// in `t`, stored as a dense window starting at `min_exp`.
///
/// Invariants: the window is trimmed at both ends (first and last stored
/// coefficients are nonzero); the zero class stores an empty window.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct LaurentWindow {
    min_exp: i64,
    coeffs: Vec<u64>,
}

impl LaurentWindow {
    fn zero() -> Self {
        Self::default()
    }

    fn coeff(&self, e: i64) -> u64 {
        if e < self.min_exp {
            return 0;
        }
        self.coeffs
            .get((e - self.min_exp) as usize)
            .copied()
            .unwrap_or(0)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_exp += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    fn add_assign(&mut self, other: &Self, p: u64) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let min = self.min_exp.min(other.min_exp);
        let max = (self.min_exp + self.coeffs.len() as i64)
            .max(other.min_exp + other.coeffs.len() as i64);
        let mut coeffs = vec![0u64; (max - min) as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = min + k as i64;
            *c = (self.coeff(e) + other.coeff(e)) % p;
        }
        *self = Self { min_exp: min, coeffs };
        self.trim();
    }
}

/// A finite-support element of `F_p[[t]][t⁻¹][y]/(yⁿ - f)`, graded by the
/// `y`-exponent: class `j ∈ [0, n)` holds a finite Laurent polynomial in
/// `t`, and `y`-exponents at or above `n` are reduced via `yⁿ = f(t)` before
/// storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentGraded {
    p: u64,
    n: usize,
    classes: Vec<LaurentWindow>,
}

impl LaurentGraded {
    /// The zero element.
    pub fn zero(p: u64, n: usize) -> Self {
        assert!(n >= 1);
        Self {
            p,
            n,
            classes: vec![LaurentWindow::zero(); n],
        }
    }

    /// The single term `c·t^e·y^j`, with `j < n`.
    pub fn term(p: u64, n: usize, c: u64, e: i64, j: usize) -> Self {
        let mut x = Self::zero(p, n);
        assert!(j < n, "y-exponent {j} not reduced below {n}");
        if c % p != 0 {
            x.classes[j] = LaurentWindow {
                min_exp: e,
                coeffs: vec![c % p],
            };
        }
        x
    }

    /// The element `poly(t)·t^shift·y^j`, with `j < n`.
    pub fn from_poly(poly: &FpPoly, shift: i64, j: usize, n: usize) -> Self {
        let mut x = Self::zero(poly.modulus(), n);
        assert!(j < n, "y-exponent {j} not reduced below {n}");
        x.classes[j] = LaurentWindow {
            min_exp: shift,
            coeffs: poly.coeffs().to_vec(),
        };
        x.classes[j].trim();
        x
    }

    /// The element `poly(1/t)·t^shift·y^j`: coefficient `poly[k]` lands on
    /// `t^(shift-k)`.
    pub fn from_poly_inv_t(poly: &FpPoly, shift: i64, j: usize, n: usize) -> Self {
        let mut x = Self::zero(poly.modulus(), n);
        assert!(j < n, "y-exponent {j} not reduced below {n}");
        let mut coeffs: Vec<u64> = poly.coeffs().to_vec();
        coeffs.reverse();
        x.classes[j] = LaurentWindow {
            min_exp: shift - poly.degree_i64().max(0),
            coeffs,
        };
        x.classes[j].trim();
        x
    }

    /// The prime modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The `y`-grading bound `n`.
    pub fn grading(&self) -> usize {
        self.n
    }

    /// The coefficient of `t^e·y^j`; zero for any pair outside the support.
    pub fn coeff(&self, e: i64, j: usize) -> u64 {
        if j >= self.n {
            return 0;
        }
        self.classes[j].coeff(e)
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(LaurentWindow::is_zero)
    }

    /// Iterates over the nonzero terms as `(t_exponent, y_class, value)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, u64)> + '_ {
        self.classes.iter().enumerate().flat_map(|(j, w)| {
            w.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(move |(k, &c)| (w.min_exp + k as i64, j, c))
        })
    }

    /// The sum `self + other`.
    ///
    /// # Panics
    ///
    /// Panics if the moduli or gradings differ.
    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (j, w) in out.classes.iter_mut().enumerate() {
            w.add_assign(&other.classes[j], self.p);
        }
        out
    }

    /// The difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The negation `-self`.
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for w in out.classes.iter_mut() {
            for c in w.coeffs.iter_mut() {
                if *c != 0 {
                    *c = self.p - *c;
                }
            }
        }
        out
    }

    /// The scalar product `c · self`.
    pub fn scale(&self, c: u64) -> Self {
        let c = (c % self.p) as u128;
        let p = self.p as u128;
        let mut out = self.clone();
        for w in out.classes.iter_mut() {
            for x in w.coeffs.iter_mut() {
                *x = ((*x as u128 * c) % p) as u64;
            }
            w.trim();
        }
        out
    }

    /// The product `self · other` in the curve algebra, reducing `y`-classes
    /// at or above `n` via `yⁿ = f(t)`.
    ///
    /// # Panics
    ///
    /// Panics if the moduli or gradings differ.
    pub fn mul(&self, other: &Self, f: &FpPoly) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.p, self.n);
        for (j1, w1) in self.classes.iter().enumerate() {
            if w1.is_zero() {
                continue;
            }
            for (j2, w2) in other.classes.iter().enumerate() {
                if w2.is_zero() {
                    continue;
                }
                let prod = convolve(w1, w2, self.p);
                if j1 + j2 < self.n {
                    out.classes[j1 + j2].add_assign(&prod, self.p);
                } else {
                    let reduced = convolve(
                        &prod,
                        &LaurentWindow {
                            min_exp: 0,
                            coeffs: f.coeffs().to_vec(),
                        },
                        self.p,
                    );
                    out.classes[j1 + j2 - self.n].add_assign(&reduced, self.p);
                }
            }
        }
        out
    }

    /// The product `self · t^e`.
    pub fn shift_t(&self, e: i64) -> Self {
        let mut out = self.clone();
        for w in out.classes.iter_mut() {
            if !w.is_zero() {
                w.min_exp += e;
            }
        }
        out
    }

    /// The part of class `j` with nonnegative `t`-exponents, as a
    /// polynomial.
    pub fn nonneg_part(&self, j: usize) -> FpPoly {
        let w = &self.classes[j];
        if w.is_zero() {
            return FpPoly::zero(self.p);
        }
        let max = w.min_exp + w.coeffs.len() as i64;
        if max <= 0 {
            return FpPoly::zero(self.p);
        }
        let mut coeffs = vec![0u64; max as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = w.coeff(k as i64);
        }
        FpPoly::new(self.p, coeffs)
    }

    /// The coefficients of class `j` at strictly negative `t`-exponents:
    /// entry `k` of the result is the coefficient of `t^-(k+1)·y^j`.
    pub fn neg_part(&self, j: usize) -> Vec<u64> {
        let w = &self.classes[j];
        if w.is_zero() || w.min_exp >= 0 {
            return Vec::new();
        }
        let mut out = vec![0u64; (-w.min_exp) as usize];
        for (k, c) in out.iter_mut().enumerate() {
            *c = w.coeff(-(k as i64) - 1);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.p, other.p, "operands live over different prime fields");
        assert_eq!(self.n, other.n, "operands carry different y-gradings");
    }
}

fn convolve(a: &LaurentWindow, b: &LaurentWindow, p: u64) -> LaurentWindow {
    if a.is_zero() || b.is_zero() {
        return LaurentWindow::zero();
    }
    let mut acc = vec![0u128; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            acc[i + j] += x as u128 * y as u128;
        }
    }
    let p128 = p as u128;
    let mut out = LaurentWindow {
        min_exp: a.min_exp + b.min_exp,
        coeffs: acc.into_iter().map(|c| (c % p128) as u64).collect(),
    };
    out.trim();
    out
}
