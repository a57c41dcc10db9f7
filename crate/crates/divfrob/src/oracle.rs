//! Structural recomputation of the matrix, independent of the closed
//! forms.
//!
//! The divided Frobenius of a class is rebuilt here from its definition:
//! apply the chartwise lifts, split the result into a Čech `H¹` class, a
//! coboundary correction, and chart-regular remainders, then project the
//! corrected differentials onto the `ω` basis. None of the closed-form
//! convolutions from the column formulas appear; agreement between the two
//! pipelines is the strongest internal check the crate has.
//!
//! Series truncation is the one approximation in the pipeline. Orders are
//! checked before use: at the default order `dv + 1` every coefficient
//! that reaches the output is exact, and a too-small override is caught
//! and retried at a doubled order rather than silently producing wrong
//! entries.

use std::collections::HashMap;

use rayon::prelude::*;

use thiserror::Error;

use crate::blocks::{alpha_u_poly, alpha_v_poly, DividedFrobeniusMatrix, MatrixOrder};
use crate::chart::{d_section, flipped_exponent, Chart, DiffForm};
use crate::curve::{enumerate_basis, euclid_pj, BasisElement, Block, DerivedParams};
use crate::froblift::{qcart, FrobeniusLift};
use crate::modring::{fp_pow, fp_pow_trunc, trunc_inverse, FpPoly, LaurentGraded, PolyError};

/// Errors raised by the structural pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// A differential was handed to the projector of the other chart.
    #[error("chart mismatch: form lives on chart {found:?}, projector expects {expected:?}")]
    ChartMismatch { expected: Chart, found: Chart },
    /// The series order cannot make every output coefficient exact.
    #[error("series order {order} is insufficient (need at least {required})")]
    TruncationInsufficient { order: usize, required: usize },
    /// The closed form for the Hasse-Witt matrix of `y² = f(t)` was asked
    /// of a curve with a different exponent.
    #[error("hyperelliptic formula requires n = 2, got n = {n}")]
    NotHyperelliptic { n: u64 },
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The image of one basis differential under the lifted Frobenius, before
/// any projection: a `U`-chart part, a `V`-chart part, and the homotopy
/// term `h` that corrects the cocycle, satisfying `d(h) = f_U - f_V` on
/// the overlap (up to series truncation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Di1Components {
    /// `t^(p(i+1)-1)·I^a · dt/y^b` on `U`, `I` the truncated inverse of `f`.
    pub f_u: DiffForm,
    /// `-s^(p(rj-i-2))·Qc(s) · ds/z^b` on `V`.
    pub f_v: DiffForm,
    /// `t^(p(i+2))·I^(a+1)·v(1/t) · y^(n-b)` as graded Laurent data.
    pub h: LaurentGraded,
}

/// The homotopy series `t^(p(i+2))·I^(a+1)·v(1/t)·y^(n-b)`, with the
/// inverse power `ip` already truncated by the caller.
fn transfer_series(
    curve: &DerivedParams,
    v: &FpPoly,
    ip: &FpPoly,
    i: u64,
    b: u64,
) -> LaurentGraded {
    let p = curve.p();
    let n = curve.n() as usize;
    let shifted = LaurentGraded::from_poly(ip, (p * (i + 2)) as i64, (curve.n() - b) as usize, n);
    let v_inv_t = LaurentGraded::from_poly_inv_t(v, 0, 0, n);
    shifted.mul(&v_inv_t, curve.f_modp())
}

/// The three components for the `H⁰` basis element `ω_{i,j}`, with series
/// inverses truncated at `order`.
///
/// # Errors
///
/// [`OracleError::TruncationInsufficient`] if `order ≤ dv`, and propagated
/// polynomial failures.
pub fn di1_components_at_order(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    x: &BasisElement,
    order: usize,
) -> Result<Di1Components, OracleError> {
    assert_eq!(x.block, Block::H0, "di1_components takes an H⁰ element");
    let required = lift.dv() as usize + 1;
    if order < required {
        return Err(OracleError::TruncationInsufficient { order, required });
    }
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let (i, j) = (x.i, x.j);
    let (a, b) = euclid_pj(p, j, n);

    let inverse = trunc_inverse(curve.f_modp(), order)?;
    let f_u_poly = fp_pow_trunc(&inverse, a, order)
        .mul(&FpPoly::monomial(p, 1, (p * (i + 1)) as usize - 1));
    let f_u = DiffForm::single(Chart::U, p, n, b, f_u_poly);

    let qc = qcart(curve, lift, j)?;
    let f_v_poly = qc
        .mul(&FpPoly::monomial(p, 1, (p * (r * j - i - 2)) as usize))
        .neg();
    let f_v = DiffForm::single(Chart::V, p, n, b, f_v_poly);

    let ip = fp_pow_trunc(&inverse, a + 1, order);
    let h = transfer_series(curve, lift.v(), &ip, i, b);
    Ok(Di1Components { f_u, f_v, h })
}

/// As [`di1_components_at_order`] at the default order `dv + 1`.
///
/// # Errors
///
/// Propagated polynomial failures.
pub fn di1_components(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    x: &BasisElement,
) -> Result<Di1Components, OracleError> {
    di1_components_at_order(curve, lift, x, lift.dv() as usize + 1)
}

/// The coordinates of the `H¹` Čech class of a graded Laurent datum on the
/// `h` basis: the coefficient of `t^(-α)·y^j` lands on `h_{α,j}` for
/// `1 ≤ α ≤ r·j - 1`. Exponents outside that window are chart-regular
/// (nonnegative powers on `U`, deep poles on `V`) and carry no class.
pub fn cech_h1_class(curve: &DerivedParams, x: &LaurentGraded) -> Vec<(BasisElement, u64)> {
    let r = curve.r();
    let n = curve.n();
    let mut class = Vec::new();
    for (e, jcls, c) in x.terms() {
        if e >= 0 || jcls == 0 {
            continue;
        }
        let alpha = (-e) as u64;
        let j = jcls as u64;
        if j < n && alpha < r * j {
            class.push((BasisElement::h(alpha, j), c));
        }
    }
    class.sort_by_key(|(elem, _)| (elem.j, elem.i));
    class
}

/// Projects a differential onto the `ω` basis, expecting it on the given
/// chart.
///
/// On `U` each class is first reduced mod `f` (the quotient is a
/// coboundary there), and the low coefficients are read off. On `V` the
/// chart is a plain affine curve with free module of differentials, so no
/// reduction happens at all: the rule `s^e ds/z^j = -t^(rj-2-e) dt/y^j`
/// turns low-degree coefficients directly into basis coordinates, with a
/// global sign.
///
/// # Errors
///
/// [`OracleError::ChartMismatch`] if the form is written on the other
/// chart.
pub fn project_h0(
    curve: &DerivedParams,
    form: &DiffForm,
    chart: Chart,
) -> Result<Vec<(BasisElement, u64)>, OracleError> {
    if form.chart() != chart {
        return Err(OracleError::ChartMismatch {
            expected: chart,
            found: form.chart(),
        });
    }
    let p = curve.p();
    let n = curve.n();
    let r = curve.r();
    let mut coords = Vec::new();
    for (j, poly) in form.classes() {
        if j < 1 || j >= n || r * j < 2 {
            continue;
        }
        match chart {
            Chart::U => {
                let (_, rem) = poly.divrem(curve.f_modp());
                for i in 0..=(r * j - 2) {
                    let c = rem.coeff(i as i64);
                    if c != 0 {
                        coords.push((BasisElement::omega(i, j), c));
                    }
                }
            }
            Chart::V => {
                for e in 0..=(r * j - 2) {
                    let c = poly.coeff(e as i64);
                    if c != 0 {
                        let mu = flipped_exponent(e as i64, j, r) as u64;
                        coords.push((BasisElement::omega(mu, j), p - c));
                    }
                }
            }
        }
    }
    coords.sort_by_key(|(elem, _)| (elem.j, elem.i));
    Ok(coords)
}

struct ClassOracle {
    b: u64,
    fpow: FpPoly,
    ip: FpPoly,
    qc: FpPoly,
}

fn structural_column(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    class: &ClassOracle,
    elem: &BasisElement,
) -> Result<Vec<(BasisElement, u64)>, OracleError> {
    let p = curve.p();
    let n = curve.n();
    let b = class.b;
    match elem.block {
        Block::H1 => {
            // The p-th power of t^(-i)·y^j is the exact Laurent polynomial
            // t^(-p·i)·f^a·y^b. Its class is the H¹ part; the chart-regular
            // remainders re-enter through the splitting of the coboundary
            // d(t^(-p·i)·y^(p·j)) and project onto H⁰.
            let power = LaurentGraded::from_poly(
                &class.fpow,
                -((p * elem.i) as i64),
                b as usize,
                n as usize,
            );
            let mut column = cech_h1_class(curve, &power);

            let h_u = power.nonneg_part(b as usize);
            let mut correction = d_section(curve, Chart::U, &h_u, b).neg();
            for &(target, c) in &column {
                let beta = alpha_u_poly(curve, target.i, b).mul_scalar(c);
                correction.add_class(n - b, beta.neg());
            }
            column.extend(project_h0(curve, &correction, Chart::U)?);
            Ok(column)
        }
        Block::H0 => {
            let h = transfer_series(curve, lift.v(), &class.ip, elem.i, b);
            let mut column = cech_h1_class(curve, &h);

            let neg = h.neg_part((n - b) as usize);
            let deep_start = (curve.r() * (n - b)) as usize - 1;
            let h_v = if neg.len() > deep_start {
                FpPoly::new(p, neg[deep_start..].to_vec())
            } else {
                FpPoly::zero(p)
            };
            let mut corrected = d_section(curve, Chart::V, &h_v, n - b);

            let shift = (p * (curve.r() * elem.j - elem.i - 2)) as usize;
            let f_v = class.qc.mul(&FpPoly::monomial(p, 1, shift)).neg();
            corrected.add_class(b, f_v);

            for &(target, c) in &column {
                let beta = alpha_v_poly(curve, target.i, n - b).mul_scalar(c);
                corrected.add_class(b, beta);
            }
            column.extend(project_h0(curve, &corrected, Chart::V)?);
            Ok(column)
        }
    }
}

fn structural_attempt(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    order: usize,
) -> Result<DividedFrobeniusMatrix, OracleError> {
    let required = lift.dv() as usize + 1;
    if order < required {
        return Err(OracleError::TruncationInsufficient { order, required });
    }
    let n = curve.n();
    let inverse = trunc_inverse(curve.f_modp(), order)?;
    let mut per_class = Vec::with_capacity(n as usize - 1);
    for j in 1..n {
        let (a, b) = euclid_pj(curve.p(), j, n);
        per_class.push(ClassOracle {
            b,
            fpow: fp_pow(curve.f_modp(), a),
            ip: fp_pow_trunc(&inverse, a + 1, order),
            qc: qcart(curve, lift, j)?,
        });
    }

    let basis = enumerate_basis(curve);
    let dim = basis.len();
    let index: HashMap<BasisElement, usize> = basis
        .iter()
        .enumerate()
        .map(|(k, &elem)| (elem, k))
        .collect();

    let columns: Vec<Vec<(BasisElement, u64)>> = basis
        .par_iter()
        .map(|elem| structural_column(curve, lift, &per_class[(elem.j - 1) as usize], elem))
        .collect::<Result<_, _>>()?;

    let mut entries = vec![vec![0u64; dim]; dim];
    for (c, column) in columns.iter().enumerate() {
        for (target, value) in column {
            entries[index[target]][c] = *value;
        }
    }
    Ok(DividedFrobeniusMatrix::from_parts(
        curve.clone(),
        MatrixOrder::Filtration,
        entries,
        basis,
    ))
}

fn structural_with_retry(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    mut order: usize,
) -> Result<DividedFrobeniusMatrix, OracleError> {
    let mut last = None;
    for _ in 0..8 {
        match structural_attempt(curve, lift, order) {
            Err(OracleError::TruncationInsufficient { required, .. }) => {
                log::warn!(
                    "series order {order} insufficient (need {required}); retrying at {}",
                    (order * 2).max(required)
                );
                order = (order * 2).max(required);
                last = Some(OracleError::TruncationInsufficient { order, required });
            }
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// Recomputes the full matrix from the definition, in filtration order.
///
/// # Errors
///
/// Propagated polynomial failures; truncation retries are handled
/// internally starting from the exact default order.
pub fn structural_phi(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
) -> Result<DividedFrobeniusMatrix, OracleError> {
    structural_with_retry(curve, lift, lift.dv() as usize + 1)
}

/// As [`structural_phi`] with an explicit starting series order. An
/// insufficient order is retried at a doubled order with a logged
/// warning; any order at least `dv + 1` gives exact (hence identical)
/// output.
///
/// # Errors
///
/// As for [`structural_phi`].
pub fn structural_phi_at_order(
    curve: &DerivedParams,
    lift: &FrobeniusLift,
    order: usize,
) -> Result<DividedFrobeniusMatrix, OracleError> {
    structural_with_retry(curve, lift, order.max(1))
}

/// The classical Hasse-Witt matrix of a hyperelliptic curve `y² = f(t)`:
/// entry `(k, i)` is the coefficient of `t^(p·i - k)` in `f^((p-1)/2)`,
/// for `1 ≤ k, i ≤ g`. Rows and columns follow the `h_{i,1}` basis.
///
/// # Errors
///
/// [`OracleError::NotHyperelliptic`] unless `n = 2`.
pub fn hyperelliptic_hw(curve: &DerivedParams) -> Result<Vec<Vec<u64>>, OracleError> {
    let n = curve.n();
    if n != 2 {
        return Err(OracleError::NotHyperelliptic { n });
    }
    let p = curve.p();
    let g = curve.g();
    let fpow = fp_pow(curve.f_modp(), (p - 1) / 2);
    let matrix = (1..=g)
        .map(|k| {
            (1..=g)
                .map(|i| fpow.coeff((p * i) as i64 - k as i64))
                .collect()
        })
        .collect();
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{
        assemble, cartier_column, hasse_witt_quadrant, hw_column, lower_left_column,
        upper_right_column,
    };
    use crate::chart::laurent_d;
    use crate::curve::{validate, CurveParams};
    use crate::froblift;

    fn quintic_curve(p: u64) -> DerivedParams {
        validate(&CurveParams::new(p, 3, vec![-120, 274, -225, 85, -15, 1])).unwrap()
    }

    fn septic_curve() -> DerivedParams {
        validate(&CurveParams::new(
            13,
            4,
            vec![-5040, 13068, -13132, 6769, -1960, 322, -28, 1],
        ))
        .unwrap()
    }

    #[test]
    fn cech_class_keeps_only_basis_window() {
        let curve = quintic_curve(17);
        let x = LaurentGraded::term(17, 3, 5, -1, 2)
            .add(&LaurentGraded::term(17, 3, 7, -4, 2))
            .add(&LaurentGraded::term(17, 3, 9, 2, 1))
            .add(&LaurentGraded::term(17, 3, 11, -1, 0));
        let class = cech_h1_class(&curve, &x);
        assert_eq!(class, vec![(BasisElement::h(1, 2), 5)]);
    }

    #[test]
    fn u_projection_reduces_mod_f() {
        let curve = quintic_curve(17);
        // f + 1 reduces to 1, all of which sits under the degree bound.
        let poly = curve.f_modp().add(&FpPoly::constant(17, 1));
        let form = DiffForm::single(Chart::U, 17, 3, 1, poly);
        let coords = project_h0(&curve, &form, Chart::U).unwrap();
        assert_eq!(coords, vec![(BasisElement::omega(0, 1), 1)]);
    }

    #[test]
    fn v_projection_flips_exponent_and_sign() {
        let curve = quintic_curve(17);
        let form = DiffForm::single(Chart::V, 17, 3, 2, FpPoly::monomial(17, 1, 1));
        let coords = project_h0(&curve, &form, Chart::V).unwrap();
        assert_eq!(coords, vec![(BasisElement::omega(1, 2), 16)]);
    }

    #[test]
    fn projection_rejects_wrong_chart() {
        let curve = quintic_curve(17);
        let form = DiffForm::single(Chart::V, 17, 3, 1, FpPoly::constant(17, 1));
        let err = project_h0(&curve, &form, Chart::U).unwrap_err();
        assert_eq!(
            err,
            OracleError::ChartMismatch {
                expected: Chart::U,
                found: Chart::V,
            }
        );
    }

    #[test]
    fn homotopy_vanishes_for_trivial_lift() {
        let curve = quintic_curve(17);
        let lift = froblift::compute(&curve).unwrap();
        let zeroed = FrobeniusLift {
            v: FpPoly::zero(17),
            ..lift
        };
        let ip = FpPoly::constant(17, 1);
        let h = transfer_series(&curve, zeroed.v(), &ip, 0, 2);
        assert!(h.is_zero());
    }

    #[test]
    fn cocycle_identity_on_overlap() {
        // d(h) = f_U - f_V on the overlap. All three components carry
        // series truncation on the positive-exponent side, so compare
        // exponents below the first error term only.
        let curve = quintic_curve(17);
        let lift = froblift::compute(&curve).unwrap();
        let p = curve.p();
        let n = curve.n();
        let deg_v = lift.v().degree_i64();
        let order = (deg_v as usize) + 60;
        for elem in enumerate_basis(&curve) {
            if elem.block != Block::H0 {
                continue;
            }
            let parts = di1_components_at_order(&curve, &lift, &elem, order).unwrap();
            let (_, b) = euclid_pj(p, elem.j, n);
            let f_u = LaurentGraded::from_poly(
                &parts.f_u.class(b),
                0,
                (n - 1 - b) as usize,
                n as usize,
            );
            let f_v = LaurentGraded::from_poly_inv_t(
                &parts.f_v.class(b),
                (curve.r() * b) as i64 - 2,
                (n - 1 - b) as usize,
                n as usize,
            )
            .neg();
            let dh = laurent_d(&parts.h, &curve);
            let diff = f_u.sub(&f_v).sub(&dh);
            let safe = (p * (elem.i + 1)) as i64 - 1 + order as i64 - deg_v;
            for (e, _, c) in diff.terms() {
                assert!(e >= safe, "residual {c} at exponent {e} in {elem}");
            }
        }
    }

    #[test]
    fn structural_columns_match_closed_forms() {
        let curve = quintic_curve(17);
        let lift = froblift::compute(&curve).unwrap();
        let matrix = structural_phi(&curve, &lift).unwrap();

        let h_src = BasisElement::h(1, 1);
        let hw = hw_column(&curve, 1, 1);
        let ur = upper_right_column(&curve, 1, 1);
        let col = matrix
            .labels()
            .iter()
            .position(|&elem| elem == h_src)
            .unwrap();
        for (r, label) in matrix.labels().iter().enumerate() {
            let expected = hw.get(label) + ur.get(label);
            assert_eq!(matrix.entries()[r][col], expected, "row {label}");
        }

        let w_src = BasisElement::omega(0, 2);
        let ca = cartier_column(&curve, &lift, 0, 2).unwrap();
        let ll = lower_left_column(&curve, &lift, 0, 2).unwrap();
        let col = matrix
            .labels()
            .iter()
            .position(|&elem| elem == w_src)
            .unwrap();
        for (r, label) in matrix.labels().iter().enumerate() {
            let expected = ca.get(label) + ll.get(label);
            assert_eq!(matrix.entries()[r][col], expected, "row {label}");
        }
    }

    #[test]
    fn structural_matches_assembled_on_septic() {
        let curve = septic_curve();
        let lift = froblift::compute(&curve).unwrap();
        let assembled = assemble(&curve, &lift, MatrixOrder::Filtration).unwrap();
        let recomputed = structural_phi(&curve, &lift).unwrap();
        assert_eq!(assembled.entries(), recomputed.entries());
    }

    #[test]
    fn low_order_retries_to_same_matrix() {
        let curve = quintic_curve(17);
        let lift = froblift::compute(&curve).unwrap();
        let direct = structural_phi(&curve, &lift).unwrap();
        let retried = structural_phi_at_order(&curve, &lift, 1).unwrap();
        assert_eq!(direct.entries(), retried.entries());
    }

    #[test]
    fn hyperelliptic_formula_matches_block_quadrant() {
        let curve = validate(&CurveParams::new(7, 2, vec![-120, 274, -225, 85, -15, 1])).unwrap();
        let classical = hyperelliptic_hw(&curve).unwrap();
        assert_eq!(classical, hasse_witt_quadrant(&curve));
        assert_eq!(classical.len(), curve.g() as usize);
    }

    #[test]
    fn hyperelliptic_formula_rejects_other_exponents() {
        let curve = quintic_curve(17);
        assert_eq!(
            hyperelliptic_hw(&curve).unwrap_err(),
            OracleError::NotHyperelliptic { n: 3 }
        );
    }
}
