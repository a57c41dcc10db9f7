//! The two affine charts and differentials written on them.
//!
//! Chart `U` has coordinates `(t, y)` with `y^n = f(t)` and `y` inverted;
//! chart `V` has coordinates `(s, z)` with `z^n = f₂(s)`. The glueing is
//!
//! ```text
//! s = 1/t,    z = t^(-r)·y,    ds = -t^(-2)·dt,
//! ```
//!
//! which gives the single exponent rule used everywhere a differential
//! crosses charts:
//!
//! ```text
//! s^e · ds/z^j  =  -t^(r·j - 2 - e) · dt/y^j.
//! ```
//!
//! The rule is an involution on exponents, so it also rewrites `U`-chart
//! differentials on `V`. The sign is always a single global `-1`.

use std::collections::BTreeMap;

use crate::curve::DerivedParams;
use crate::modring::{mod_inv, FpPoly, LaurentGraded};

/// One of the two affine charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// Coordinates `(t, y)`, `y` inverted.
    U,
    /// Coordinates `(s, z)` at infinity.
    V,
}

/// Rewrites the monomial exponent when a differential crosses charts:
/// `s^e ds/z^j = -t^(r·j-2-e) dt/y^j`, and symmetrically with `s` and `t`
/// exchanged. The accompanying sign flip is the caller's responsibility.
pub fn flipped_exponent(e: i64, j: u64, r: u64) -> i64 {
    (r * j) as i64 - 2 - e
}

/// A regular differential on one chart, stored class by class:
/// `Σ_j P_j(t)·dt/y^j` on `U`, or `Σ_j P_j(s)·ds/z^j` on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm {
    chart: Chart,
    p: u64,
    n: u64,
    classes: BTreeMap<u64, FpPoly>,
}

impl DiffForm {
    /// The zero differential on the given chart.
    pub fn zero(chart: Chart, p: u64, n: u64) -> Self {
        DiffForm {
            chart,
            p,
            n,
            classes: BTreeMap::new(),
        }
    }

    /// A differential supported on a single class `j`.
    pub fn single(chart: Chart, p: u64, n: u64, j: u64, poly: FpPoly) -> Self {
        let mut form = DiffForm::zero(chart, p, n);
        form.add_class(j, poly);
        form
    }

    /// The chart this differential is written on.
    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// The exponent `n` of the curve equation.
    pub fn grading(&self) -> u64 {
        self.n
    }

    /// The prime modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The coefficient polynomial on class `j` (zero if absent).
    pub fn class(&self, j: u64) -> FpPoly {
        self.classes
            .get(&j)
            .cloned()
            .unwrap_or_else(|| FpPoly::zero(self.p))
    }

    /// Iterates over the nonzero classes in increasing order of `j`.
    pub fn classes(&self) -> impl Iterator<Item = (u64, &FpPoly)> {
        self.classes.iter().map(|(&j, poly)| (j, poly))
    }

    /// Adds `poly` into class `j`.
    pub fn add_class(&mut self, j: u64, poly: FpPoly) {
        if poly.is_zero() {
            return;
        }
        let entry = self
            .classes
            .entry(j)
            .or_insert_with(|| FpPoly::zero(self.p));
        *entry = entry.add(&poly);
        if entry.is_zero() {
            self.classes.remove(&j);
        }
    }

    /// Classwise sum. Panics if the charts or moduli differ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.chart, other.chart, "cannot add forms across charts");
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (j, poly) in other.classes() {
            out.add_class(j, poly.clone());
        }
        out
    }

    /// Classwise negation.
    pub fn neg(&self) -> Self {
        let mut out = DiffForm::zero(self.chart, self.p, self.n);
        for (j, poly) in self.classes() {
            out.add_class(j, poly.neg());
        }
        out
    }

    /// Whether every class vanishes.
    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The exterior derivative of the section `h(x)·w^m` (with `1 ≤ m < n`) on
/// either chart, where `(x, w)` is `(t, y)` on `U` or `(s, z)` on `V` and
/// `w^n = g(x)` is the chart equation:
///
/// ```text
/// d(h·w^m) = (g·h′ + (m/n)·g′·h) · dx/w^(n-m).
/// ```
pub fn d_section(curve: &DerivedParams, chart: Chart, h: &FpPoly, m: u64) -> DiffForm {
    let p = curve.p();
    let n = curve.n();
    assert!(m >= 1 && m < n, "section class out of range: {m}");
    let g = match chart {
        Chart::U => curve.f_modp(),
        Chart::V => curve.f2_modp(),
    };
    let ratio = m % p * mod_inv(n % p, p) % p;
    let poly = g
        .mul(&h.derivative())
        .add(&g.derivative().mul(h).mul_scalar(ratio));
    DiffForm::single(chart, p, n, n - m, poly)
}

/// The exterior derivative of a graded Laurent expression on `U`, written
/// against the reference differential `dt/y^(n-1)`.
///
/// A term `c·t^e·y^m` maps to `c·(e·t^(e-1)·f + (m/n)·t^e·f′)·y^(m-1)` for
/// `m ≥ 1` (the class-`n` power `y^(m-1+n)` already reduced via
/// `y^n = f`), and to `c·e·t^(e-1)·y^(n-1)` for `m = 0`.
pub fn laurent_d(x: &LaurentGraded, curve: &DerivedParams) -> LaurentGraded {
    let p = x.modulus();
    let n = x.grading();
    let f = curve.f_modp();
    let df = f.derivative();
    let n_inv = mod_inv(curve.n() % p, p);

    let mut per_class: Vec<Vec<(i64, u64)>> = vec![Vec::new(); n];
    for (e, m, c) in x.terms() {
        per_class[m].push((e, c));
    }

    let mut out = LaurentGraded::zero(p, n);
    for (m, terms) in per_class.iter().enumerate() {
        if terms.is_empty() {
            continue;
        }
        let min_e = terms.iter().map(|&(e, _)| e).min().unwrap();
        let max_e = terms.iter().map(|&(e, _)| e).max().unwrap();
        let width = (max_e - min_e) as usize + 1;
        let mut window = vec![0u64; width];
        let mut dwindow = vec![0u64; width];
        for &(e, c) in terms {
            let k = (e - min_e) as usize;
            window[k] = c;
            dwindow[k] = (e.rem_euclid(p as i64) as u64) * c % p;
        }
        let win = FpPoly::new(p, window);
        let dwin = FpPoly::new(p, dwindow);
        if m >= 1 {
            let ratio = m as u64 % p * n_inv % p;
            out = out.add(&LaurentGraded::from_poly(&f.mul(&dwin), min_e - 1, m - 1, n));
            out = out.add(&LaurentGraded::from_poly(
                &df.mul(&win).mul_scalar(ratio),
                min_e,
                m - 1,
                n,
            ));
        } else {
            out = out.add(&LaurentGraded::from_poly(&dwin, min_e - 1, n - 1, n));
        }
    }
    out
}
