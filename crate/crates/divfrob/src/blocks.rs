//! Closed-form columns of the divided Frobenius matrix.
//!
//! The divided Frobenius `Φ = F/p` acts on `H⁰(Ω¹) ⊕ H¹(O)` and its matrix
//! splits into four blocks. Writing `(a, b)` for the division
//! `p·j = a·n + b` with `1 ≤ b ≤ n-1`, and `F = f^a mod p`, each column is
//! given in closed form:
//!
//! - `h_{i,j} → H¹` (Hasse-Witt): coefficient `F[p·i - k]` on `h_{k,b}`;
//! - `h_{i,j} → H⁰`: a single convolution of `F` against `f` with rational
//!   weights `(k·n - b·(m+k+1))/n`;
//! - `ω_{i,j} → H¹`: a convolution of `I^(a+1)` (the truncated inverse of
//!   `f` raised to the `a+1`-st power) against the lift datum `v`;
//! - `ω_{i,j} → H⁰` (Cartier block): a weighted double convolution plus a
//!   boundary term from the exact quotient `(s^(p-1) + v′)/f₂^a`.
//!
//! Every column lands entirely in the isotypic class `b ≡ p·j (mod n)`,
//! which is why the reordered matrix is block diagonal.
//!
//! All coefficient lookups out of range are zero; several formulas lean on
//! that convention, so columns are assembled with signed indices
//! throughout.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::curve::{
    enumerate_basis, euclid_pj, isotypic_permutation, BasisElement, Block, DerivedParams,
};
use crate::froblift::{qcart, FrobeniusLift};
use crate::modring::{
    fp_pow_recurrence, fp_pow_trunc, mod_inv, trunc_inverse, FpPoly, LaurentGraded, PolyError,
};

/// One column of the matrix, sparse: entries pair a basis element with a
/// nonzero coefficient mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnVector {
    source: BasisElement,
    entries: Vec<(BasisElement, u64)>,
}

impl ColumnVector {
    fn new(source: BasisElement) -> Self {
        ColumnVector {
            source,
            entries: Vec::new(),
        }
    }

    fn push(&mut self, target: BasisElement, value: u64) {
        if value != 0 {
            self.entries.push((target, value));
        }
    }

    fn extend(&mut self, other: ColumnVector) {
        self.entries.extend(other.entries);
    }

    /// The basis element this column is the image of.
    pub fn source(&self) -> BasisElement {
        self.source
    }

    /// The nonzero entries, as (target element, coefficient) pairs.
    pub fn entries(&self) -> &[(BasisElement, u64)] {
        &self.entries
    }

    /// The coefficient on `target` (zero if absent).
    pub fn get(&self, target: &BasisElement) -> u64 {
        self.entries
            .iter()
            .find(|(elem, _)| elem == target)
            .map_or(0, |&(_, value)| value)
    }
}

/// Row and column arrangement of the assembled matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOrder {
    /// `H⁰` basis first, then `H¹`, each sorted by `(j, i)`.
    Filtration,
    /// Grouped by isotypic class, making the matrix block diagonal.
    Isotypic,
}

/// Errors raised while assembling the full matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssembleError {
    /// The assembled matrix is singular mod `p`. The divided Frobenius is
    /// an isomorphism, so this signals an implementation bug.
    #[error("assembled matrix is singular mod p")]
    SingularMatrix,
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The assembled `2g × 2g` matrix of the divided Frobenius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedFrobeniusMatrix {
    curve: DerivedParams,
    order: MatrixOrder,
    entries: Vec<Vec<u64>>,
    labels: Vec<BasisElement>,
}

impl DividedFrobeniusMatrix {
    pub(crate) fn from_parts(
        curve: DerivedParams,
        order: MatrixOrder,
        entries: Vec<Vec<u64>>,
        labels: Vec<BasisElement>,
    ) -> Self {
        DividedFrobeniusMatrix {
            curve,
            order,
            entries,
            labels,
        }
    }

    /// The validated curve the matrix belongs to.
    pub fn curve(&self) -> &DerivedParams {
        &self.curve
    }

    /// The row and column arrangement.
    pub fn order(&self) -> MatrixOrder {
        self.order
    }

    /// The matrix entries, row major, reduced mod `p`.
    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// The basis element labelling each row (and column) in order.
    pub fn labels(&self) -> &[BasisElement] {
        &self.labels
    }

    /// The dimension `2g`.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Extracts the submatrix of rows labelled by `row_block` and columns
    /// labelled by `col_block`, in the matrix's current order.
    pub fn quadrant(&self, row_block: Block, col_block: Block) -> Vec<Vec<u64>> {
        let rows: Vec<usize> = (0..self.dim())
            .filter(|&k| self.labels[k].block == row_block)
            .collect();
        let cols: Vec<usize> = (0..self.dim())
            .filter(|&k| self.labels[k].block == col_block)
            .collect();
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c]).collect())
            .collect()
    }

    /// The determinant of the full matrix mod `p`.
    pub fn determinant(&self) -> u64 {
        det_mod_p(&self.entries, self.curve.p())
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// `num/n mod p` for a signed numerator.
fn ratio_mod(num: i128, n_inv: u64, p: u64) -> u64 {
    let reduced = num.rem_euclid(p as i128) as u64;
    mulmod(reduced, n_inv, p)
}

/// Per-class data that depends only on `(a, b)`: the power `F = f^a`.
struct ClassPowers {
    b: u64,
    fpow: FpPoly,
}

fn class_powers(curve: &DerivedParams, j: u64) -> ClassPowers {
    let (a, b) = euclid_pj(curve.p(), j, curve.n());
    let fpow = fp_pow_recurrence(curve.f_modp(), a);
    ClassPowers { b, fpow }
}

/// Per-class data that also needs the lift: `I^(a+1)` truncated at order
/// `dv + 1` and the exact quotient for class `j`.
///
/// The truncation is lossless here: the convolutions only ever read `v` at
/// indices `≥ p(i+2) ≥ 2p`, so series coefficients of `f^(-(a+1))` beyond
/// degree `dv = deg v - 2p` never meet a nonzero coefficient of `v`.
struct ClassLift {
    ip: FpPoly,
    qc: FpPoly,
}

fn class_lift(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    inverse: &FpPoly,
    j: u64,
) -> Result<ClassLift, PolyError> {
    let (a, _) = euclid_pj(curve.p(), j, curve.n());
    let order = lift.dv() as usize + 1;
    let ip = fp_pow_trunc(inverse, a + 1, order);
    let qc = qcart(curve, lift, j)?;
    Ok(ClassLift { ip, qc })
}

/// The two components of the splitting `τ(h_{i,j}) = (α_U, -α_V, h_{i,j})`
/// for an `H¹` basis element, both written against `dt/y^(n-1)` in the
/// coordinates of the chart where `y` is inverted. Their sum is the exact
/// derivative `d(t^(-i)·y^j)`.
pub fn tau_split(curve: &DerivedParams, x: &BasisElement) -> (LaurentGraded, LaurentGraded) {
    assert_eq!(x.block, Block::H1, "tau_split takes an H¹ basis element");
    let (i, j) = (x.i, x.j);
    let n = curve.n();
    let r = curve.r();
    let nu = n as usize;
    let alpha_u = LaurentGraded::from_poly(
        &alpha_u_poly(curve, i, j),
        0,
        (j - 1) as usize,
        nu,
    );
    let alpha_v = LaurentGraded::from_poly_inv_t(
        &alpha_v_poly(curve, i, j),
        (r * (n - j)) as i64 - 2,
        (j - 1) as usize,
        nu,
    )
    .neg();
    (alpha_u, alpha_v)
}

/// The chart-`U` component of the splitting of `d(t^(-i)·y^j)`, as the
/// coefficient polynomial of `dt/y^(n-j)`:
/// `Σ_{k=i+1}^{l} ((j·k - i·n)/n)·f[k]·t^(k-i-1)`.
pub fn alpha_u_poly(curve: &DerivedParams, i: u64, j: u64) -> FpPoly {
    let p = curve.p();
    let n = curve.n();
    let l = curve.l();
    let f = curve.f_modp();
    let n_inv = mod_inv(n % p, p);
    let mut coeffs = vec![0u64; (l - i) as usize];
    for k in (i + 1)..=l {
        let num = (j as i128) * (k as i128) - (i as i128) * (n as i128);
        let weight = ratio_mod(num, n_inv, p);
        coeffs[(k - i - 1) as usize] = mulmod(weight, f.coeff(k as i64), p);
    }
    FpPoly::new(p, coeffs)
}

/// The chart-`V` component of the splitting of `d(t^(-i)·y^j)`, as the
/// coefficient polynomial of `ds/z^(n-j)`:
/// `Σ_{μ=0}^{i} ((i·n - j·μ)/n)·f[μ]·s^(i-1+(n-j)·r-μ)`.
pub fn alpha_v_poly(curve: &DerivedParams, i: u64, j: u64) -> FpPoly {
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let f = curve.f_modp();
    let n_inv = mod_inv(n % p, p);
    let top = i as i64 - 1 + ((n - j) * r) as i64;
    let mut coeffs = vec![0u64; (top + 1).max(0) as usize];
    for mu in 0..=i {
        let e = top - mu as i64;
        if e < 0 {
            continue;
        }
        let num = (i as i128) * (n as i128) - (j as i128) * (mu as i128);
        let weight = ratio_mod(num, n_inv, p);
        coeffs[e as usize] = mulmod(weight, f.coeff(mu as i64), p);
    }
    FpPoly::new(p, coeffs)
}

fn hw_column_with(curve: &DerivedParams, powers: &ClassPowers, i: u64) -> ColumnVector {
    let p = curve.p();
    let r = curve.r();
    let b = powers.b;
    let mut column = ColumnVector::new(BasisElement::h(i, 0));
    for k in 1..r * b {
        let value = powers.fpow.coeff((p * i) as i64 - k as i64);
        column.push(BasisElement::h(k, b), value);
    }
    column
}

fn upper_right_column_with(curve: &DerivedParams, powers: &ClassPowers, i: u64) -> ColumnVector {
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let f = curve.f_modp();
    let n_inv = mod_inv(n % p, p);
    let b = powers.b;
    let deg_f = powers.fpow.degree_i64();
    let mut column = ColumnVector::new(BasisElement::h(i, 0));
    if r * (n - b) < 2 {
        return column;
    }
    for m in 0..=(r * (n - b) - 2) {
        let mut acc: u128 = 0;
        let low = (p * i) as i64 - deg_f;
        let high = (r * b) as i64 - 1;
        for k in low..=high {
            let fk = powers.fpow.coeff((p * i) as i64 - k);
            if fk == 0 {
                continue;
            }
            let fc = f.coeff(m as i64 + k + 1);
            if fc == 0 {
                continue;
            }
            let num = k as i128 * n as i128 - b as i128 * (m as i128 + k as i128 + 1);
            let weight = ratio_mod(num, n_inv, p);
            acc += mulmod(mulmod(weight, fk, p), fc, p) as u128;
        }
        column.push(BasisElement::omega(m, n - b), (acc % p as u128) as u64);
    }
    column
}

fn lower_left_column_with(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    powers: &ClassPowers,
    class: &ClassLift,
    i: u64,
) -> ColumnVector {
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let b = powers.b;
    let v = lift.v();
    let mut column = ColumnVector::new(BasisElement::omega(i, 0));
    let base = (p * (i + 2)) as i64;
    for m in 1..r * (n - b) {
        let mut acc: u128 = 0;
        for (k, &ck) in class.ip.coeffs().iter().enumerate() {
            if ck == 0 {
                continue;
            }
            let vc = v.coeff(base + k as i64 + m as i64);
            acc += mulmod(ck, vc, p) as u128;
        }
        column.push(BasisElement::h(m, n - b), (acc % p as u128) as u64);
    }
    column
}

fn cartier_column_with(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    powers: &ClassPowers,
    class: &ClassLift,
    i: u64,
    j: u64,
) -> ColumnVector {
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let l = curve.l();
    let f = curve.f_modp();
    let n_inv = mod_inv(n % p, p);
    let b = powers.b;
    let v = lift.v();
    let dv = lift.dv() as i64;
    let mut column = ColumnVector::new(BasisElement::omega(i, 0));
    if r * b < 2 {
        return column;
    }
    let base = (p * (i + 2)) as i64;
    let boundary_base = (r * b) as i64 - 2 + p as i64 * (i as i64 + 2 - (r * j) as i64);
    for mu in 0..=(r * b - 2) {
        let mut acc: u128 = class.qc.coeff(boundary_base - mu as i64) as u128;
        for (k, &ck) in class.ip.coeffs().iter().enumerate() {
            if ck == 0 {
                continue;
            }
            let low = (r * (n - b)) as i64;
            let high = (dv - (p * i) as i64 - k as i64).min(l as i64 - 1 - mu as i64);
            for m in low..=high {
                let fc = f.coeff(mu as i64 + m + 1);
                if fc == 0 {
                    continue;
                }
                let vc = v.coeff(base + k as i64 + m);
                if vc == 0 {
                    continue;
                }
                let num = n as i128 * (mu as i128 + 1) - b as i128 * (mu as i128 + m as i128 + 1);
                let weight = ratio_mod(num, n_inv, p);
                acc += mulmod(mulmod(weight, ck, p), mulmod(fc, vc, p), p) as u128;
            }
        }
        column.push(BasisElement::omega(mu, b), (acc % p as u128) as u64);
    }
    column
}

fn check_h1_source(curve: &DerivedParams, i: u64, j: u64) {
    assert!(j >= 1 && j < curve.n(), "class index out of range: {j}");
    assert!(
        i >= 1 && curve.r() * j > i,
        "row index out of range for h: {i}"
    );
}

fn check_h0_source(curve: &DerivedParams, i: u64, j: u64) {
    assert!(j >= 1 && j < curve.n(), "class index out of range: {j}");
    assert!(
        curve.r() * j >= 2 + i,
        "row index out of range for omega: {i}"
    );
}

/// The Hasse-Witt part (image in `H¹`) of the column of `h_{i,j}`.
pub fn hw_column(curve: &DerivedParams, i: u64, j: u64) -> ColumnVector {
    check_h1_source(curve, i, j);
    let powers = class_powers(curve, j);
    let mut column = hw_column_with(curve, &powers, i);
    column.source = BasisElement::h(i, j);
    column
}

/// The image in `H⁰` of the column of the `H¹` basis element `h_{i,j}`.
pub fn upper_right_column(curve: &DerivedParams, i: u64, j: u64) -> ColumnVector {
    check_h1_source(curve, i, j);
    let powers = class_powers(curve, j);
    let mut column = upper_right_column_with(curve, &powers, i);
    column.source = BasisElement::h(i, j);
    column
}

/// The image in `H¹` of the column of the differential `ω_{i,j}`.
///
/// # Errors
///
/// Propagates polynomial failures from the per-class lift data; these
/// cannot occur for a validated curve.
pub fn lower_left_column(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    i: u64,
    j: u64,
) -> Result<ColumnVector, PolyError> {
    check_h0_source(curve, i, j);
    let powers = class_powers(curve, j);
    let inverse = trunc_inverse(curve.f_modp(), lift.dv() as usize + 1)?;
    let class = class_lift(curve, lift, &inverse, j)?;
    let mut column = lower_left_column_with(curve, lift, &powers, &class, i);
    column.source = BasisElement::omega(i, j);
    Ok(column)
}

/// The Cartier part (image in `H⁰`) of the column of `ω_{i,j}`.
///
/// # Errors
///
/// As for [`lower_left_column`].
pub fn cartier_column(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    i: u64,
    j: u64,
) -> Result<ColumnVector, PolyError> {
    check_h0_source(curve, i, j);
    let powers = class_powers(curve, j);
    let inverse = trunc_inverse(curve.f_modp(), lift.dv() as usize + 1)?;
    let class = class_lift(curve, lift, &inverse, j)?;
    let mut column = cartier_column_with(curve, lift, &powers, &class, i, j);
    column.source = BasisElement::omega(i, j);
    Ok(column)
}

/// Assembles the full `2g × 2g` matrix, columns in parallel.
///
/// # Errors
///
/// [`AssembleError::SingularMatrix`] if the result is not invertible
/// mod `p` (the divided Frobenius always is, so this flags a bug), and
/// propagated polynomial failures.
pub fn assemble(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    order: MatrixOrder,
) -> Result<DividedFrobeniusMatrix, AssembleError> {
    let n = curve.n();
    let basis = enumerate_basis(curve);
    let dim = basis.len();
    let index: HashMap<BasisElement, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, &elem)| (elem, k))
        .collect();

    let inverse = trunc_inverse(curve.f_modp(), lift.dv() as usize + 1)?;
    let mut powers_by_class = Vec::with_capacity(n as usize - 1);
    let mut lifts_by_class = Vec::with_capacity(n as usize - 1);
    for j in 1..n {
        let powers = class_powers(curve, j);
        lifts_by_class.push(class_lift(curve, lift, &inverse, j)?);
        powers_by_class.push(powers);
    }

    let columns: Vec<(usize, ColumnVector)> = basis
        .par_iter()
        .enumerate()
        .map(|(c, elem)| {
            let powers = &powers_by_class[(elem.j - 1) as usize];
            let class = &lifts_by_class[(elem.j - 1) as usize];
            let mut column = match elem.block {
                Block::H0 => {
                    let mut col = cartier_column_with(curve, lift, powers, class, elem.i, elem.j);
                    col.extend(lower_left_column_with(curve, lift, powers, class, elem.i));
                    col
                }
                Block::H1 => {
                    let mut col = upper_right_column_with(curve, powers, elem.i);
                    col.extend(hw_column_with(curve, powers, elem.i));
                    col
                }
            };
            column.source = *elem;
            (c, column)
        })
        .collect();

    let mut entries = vec![vec![0u64; dim]; dim];
    for (c, column) in &columns {
        for (target, value) in column.entries() {
            entries[index[target]][*c] = *value;
        }
    }

    if det_mod_p(&entries, curve.p()) == 0 {
        return Err(AssembleError::SingularMatrix);
    }

    let mut labels = basis;
    if order == MatrixOrder::Isotypic {
        let perm = isotypic_permutation(curve);
        labels = perm.iter().map(|&old| labels[old]).collect();
        entries = perm
            .iter()
            .map(|&old_r| perm.iter().map(|&old_c| entries[old_r][old_c]).collect())
            .collect();
    }

    Ok(DividedFrobeniusMatrix {
        curve: curve.clone(),
        order,
        entries,
        labels,
    })
}

/// Assembles only the Hasse-Witt quadrant (`H¹ → H¹`), rows and columns in
/// filtration order. Cheaper than [`assemble`]: no lift is needed.
pub fn hasse_witt_quadrant(curve: &DerivedParams) -> Vec<Vec<u64>> {
    let n = curve.n();
    let basis: Vec<BasisElement> = enumerate_basis(curve)
        .into_iter()
        .filter(|elem| elem.block == Block::H1)
        .collect();
    let index: HashMap<BasisElement, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, &elem)| (elem, k))
        .collect();
    let powers_by_class: Vec<ClassPowers> = (1..n).map(|j| class_powers(curve, j)).collect();

    let g = basis.len();
    let mut entries = vec![vec![0u64; g]; g];
    let columns: Vec<(usize, ColumnVector)> = basis
        .par_iter()
        .enumerate()
        .map(|(c, elem)| {
            let powers = &powers_by_class[(elem.j - 1) as usize];
            (c, hw_column_with(curve, powers, elem.i))
        })
        .collect();
    for (c, column) in &columns {
        for (target, value) in column.entries() {
            entries[index[target]][*c] = *value;
        }
    }
    entries
}

/// Whether every nonzero entry respects the isotypic support pattern: a
/// column indexed by class `c` may only hit rows of class `p·c mod n`.
pub fn support_pattern_holds(matrix: &DividedFrobeniusMatrix) -> bool {
    let n = matrix.curve().n();
    let p = matrix.curve().p();
    let labels = matrix.labels();
    for c in 0..matrix.dim() {
        let image_class = p % n * labels[c].iso_class(n) % n;
        for r in 0..matrix.dim() {
            if matrix.entries()[r][c] != 0 && labels[r].iso_class(n) != image_class {
                return false;
            }
        }
    }
    true
}

/// Whether two matrices describe the same operator, regardless of row and
/// column arrangement: entries are compared through their basis labels.
pub fn entries_match_by_labels(a: &DividedFrobeniusMatrix, b: &DividedFrobeniusMatrix) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let position: HashMap<BasisElement, usize> = b
        .labels()
        .iter()
        .enumerate()
        .map(|(k, &elem)| (elem, k))
        .collect();
    let mapped: Option<Vec<usize>> = a
        .labels()
        .iter()
        .map(|elem| position.get(elem).copied())
        .collect();
    let Some(mapped) = mapped else {
        return false;
    };
    for r in 0..a.dim() {
        for c in 0..a.dim() {
            if a.entries()[r][c] != b.entries()[mapped[r]][mapped[c]] {
                return false;
            }
        }
    }
    true
}

/// The determinant of a square matrix mod `p` by Gaussian elimination.
pub fn det_mod_p(matrix: &[Vec<u64>], p: u64) -> u64 {
    let dim = matrix.len();
    if dim == 0 {
        return 1 % p;
    }
    let mut m: Vec<Vec<u64>> = matrix.to_vec();
    let mut det: u64 = 1 % p;
    for col in 0..dim {
        let pivot_row = match (col..dim).find(|&row| m[row][col] != 0) {
            Some(row) => row,
            None => return 0,
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = p - det;
        }
        let pivot = m[col][col];
        det = mulmod(det, pivot, p);
        let pivot_inv = mod_inv(pivot, p);
        for row in (col + 1)..dim {
            if m[row][col] == 0 {
                continue;
            }
            let factor = mulmod(m[row][col], pivot_inv, p);
            for k in col..dim {
                let sub = mulmod(factor, m[col][k], p);
                m[row][k] = (m[row][k] + p - sub) % p;
            }
        }
    }
    det % p
}
