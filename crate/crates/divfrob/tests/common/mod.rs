//! Shared fixtures: the published example curves with their full matrices
//! in both presentation orders, and a deterministic pseudo-random curve
//! corpus for the cross-validation suites.

#![allow(dead_code)]

use divfrob::curve::{validate, CurveParams, DerivedParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `f = (t-1)(t-2)(t-3)(t-4)(t-5)`, used with `n = 3` and `p ∈ {17, 31, 41}`.
pub const QUINTIC: [i64; 6] = [-120, 274, -225, 85, -15, 1];

/// `f = (t-1)(t-2)...(t-7)`, used with `n = 4` and `p = 13`.
pub const SEPTIC: [i64; 8] = [-5040, 13068, -13132, 6769, -1960, 322, -28, 1];

pub fn curve(p: u64, n: u64, f: &[i64]) -> DerivedParams {
    validate(&CurveParams::new(p, n, f.to_vec())).expect("fixture curve must validate")
}

fn rows<const N: usize>(m: [[u64; N]; N]) -> Vec<Vec<u64>> {
    m.iter().map(|row| row.to_vec()).collect()
}

/// The 8×8 matrix of `y³ = (t-1)...(t-5)` over `F_17`, filtration order.
pub fn golden_17() -> Vec<Vec<u64>> {
    rows([
        [0, 12, 16, 6, 6, 0, 0, 0],
        [8, 0, 0, 0, 0, 15, 1, 11],
        [9, 0, 0, 0, 0, 7, 0, 12],
        [7, 0, 0, 0, 0, 1, 4, 15],
        [10, 0, 0, 0, 0, 10, 8, 0],
        [0, 13, 5, 8, 0, 0, 0, 0],
        [0, 5, 10, 11, 13, 0, 0, 0],
        [0, 8, 11, 0, 10, 0, 0, 0],
    ])
}

/// Same curve over `F_31`, filtration order.
pub fn golden_31() -> Vec<Vec<u64>> {
    rows([
        [21, 0, 0, 0, 0, 8, 2, 4],
        [0, 17, 19, 25, 8, 0, 0, 0],
        [0, 14, 10, 16, 30, 0, 0, 0],
        [0, 8, 8, 14, 20, 0, 0, 0],
        [0, 0, 16, 3, 11, 0, 0, 0],
        [0, 0, 0, 0, 0, 9, 11, 24],
        [28, 0, 0, 0, 0, 8, 29, 10],
        [13, 0, 0, 0, 0, 29, 15, 9],
    ])
}

/// Same curve over `F_41`, filtration order.
pub fn golden_41() -> Vec<Vec<u64>> {
    rows([
        [0, 1, 31, 30, 36, 0, 0, 0],
        [5, 0, 0, 0, 0, 37, 27, 14],
        [34, 0, 0, 0, 0, 27, 9, 6],
        [8, 0, 0, 0, 0, 14, 6, 40],
        [33, 0, 0, 0, 0, 0, 0, 0],
        [0, 36, 26, 4, 0, 0, 0, 0],
        [0, 26, 6, 31, 0, 0, 0, 0],
        [0, 4, 31, 38, 0, 0, 0, 0],
    ])
}

/// The 18×18 matrix of `y⁴ = (t-1)...(t-7)` over `F_13`, filtration order.
pub fn golden_13() -> Vec<Vec<u64>> {
    rows([
        [10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 8, 1, 8, 6],
        [0, 4, 9, 6, 0, 0, 0, 0, 0, 0, 6, 8, 10, 0, 0, 0, 0, 0],
        [0, 10, 4, 0, 0, 0, 0, 0, 0, 0, 5, 0, 8, 0, 0, 0, 0, 0],
        [0, 1, 8, 8, 0, 0, 0, 0, 0, 0, 8, 9, 10, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 9, 5, 6, 2, 12, 6, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 11, 3, 9, 6, 12, 7, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 2, 1, 1, 2, 0, 12, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 6, 12, 0, 8, 2, 11, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 8, 10, 6, 7, 10, 5, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 5, 7, 0, 10, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 9, 7, 0, 0, 0, 0, 0, 0, 9, 11, 10, 0, 0, 0, 0, 0],
        [0, 5, 4, 7, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0],
        [0, 1, 4, 1, 0, 0, 0, 0, 0, 0, 3, 12, 1, 0, 0, 0, 0, 0],
        [4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 10, 7, 7, 7, 0],
        [3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 10, 8, 10, 12, 1],
        [10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 10, 1, 4, 8],
        [11, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 11, 1, 7, 12, 0],
        [5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12, 1, 4, 9, 8],
    ])
}

/// `golden_17` regrouped by isotypic component.
pub fn grouped_17() -> Vec<Vec<u64>> {
    rows([
        [0, 0, 0, 0, 12, 16, 6, 6],
        [0, 0, 0, 0, 13, 5, 8, 0],
        [0, 0, 0, 0, 5, 10, 11, 13],
        [0, 0, 0, 0, 8, 11, 0, 10],
        [8, 15, 1, 11, 0, 0, 0, 0],
        [9, 7, 0, 12, 0, 0, 0, 0],
        [7, 1, 4, 15, 0, 0, 0, 0],
        [10, 10, 8, 0, 0, 0, 0, 0],
    ])
}

/// `golden_31` regrouped by isotypic component.
pub fn grouped_31() -> Vec<Vec<u64>> {
    rows([
        [21, 8, 2, 4, 0, 0, 0, 0],
        [0, 9, 11, 24, 0, 0, 0, 0],
        [28, 8, 29, 10, 0, 0, 0, 0],
        [13, 29, 15, 9, 0, 0, 0, 0],
        [0, 0, 0, 0, 17, 19, 25, 8],
        [0, 0, 0, 0, 14, 10, 16, 30],
        [0, 0, 0, 0, 8, 8, 14, 20],
        [0, 0, 0, 0, 0, 16, 3, 11],
    ])
}

/// `golden_41` regrouped by isotypic component.
pub fn grouped_41() -> Vec<Vec<u64>> {
    rows([
        [0, 0, 0, 0, 1, 31, 30, 36],
        [0, 0, 0, 0, 36, 26, 4, 0],
        [0, 0, 0, 0, 26, 6, 31, 0],
        [0, 0, 0, 0, 4, 31, 38, 0],
        [5, 37, 27, 14, 0, 0, 0, 0],
        [34, 27, 9, 6, 0, 0, 0, 0],
        [8, 14, 6, 40, 0, 0, 0, 0],
        [33, 0, 0, 0, 0, 0, 0, 0],
    ])
}

/// `golden_13` regrouped by isotypic component.
pub fn grouped_13() -> Vec<Vec<u64>> {
    rows([
        [10, 2, 8, 1, 8, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [4, 10, 7, 7, 7, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [3, 10, 8, 10, 12, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [10, 12, 10, 1, 4, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [11, 11, 1, 7, 12, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [5, 12, 1, 4, 9, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 4, 9, 6, 6, 8, 10, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 10, 4, 0, 5, 0, 8, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 8, 8, 8, 9, 10, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 9, 7, 9, 11, 10, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 5, 4, 7, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 4, 1, 3, 12, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 9, 5, 6, 2, 12, 6],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 11, 3, 9, 6, 12, 7],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 1, 2, 0, 12],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 6, 12, 0, 8, 2, 11],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 10, 6, 7, 10, 5],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5, 7, 0, 10, 8, 0],
    ])
}

const PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Deterministic rejection sampling of valid curves with `p ≤ 50`,
/// `n` drawn from `exponents`, and `l ≤ 13`. Coefficients range over all of
/// `Z/p²Z` so that the mod-`p²` part of `f` is exercised too. The seed is
/// fixed so every suite sees the same corpus.
pub fn random_corpus(count: usize, exponents: &[u64]) -> Vec<DerivedParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut curves = Vec::with_capacity(count);
    let mut attempts = 0u32;
    while curves.len() < count {
        attempts += 1;
        assert!(attempts < 100_000, "corpus sampling failed to converge");
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let n = exponents[rng.gen_range(0..exponents.len())];
        let degrees: Vec<u64> = (1..)
            .map(|k| k * n - 1)
            .take_while(|&l| l <= 13)
            .filter(|&l| l >= 2)
            .collect();
        let l = degrees[rng.gen_range(0..degrees.len())];
        let mut f: Vec<i64> = (0..=l).map(|_| rng.gen_range(0..(p * p) as i64)).collect();
        for index in [0, l as usize] {
            if f[index] % p as i64 == 0 {
                f[index] += 1;
            }
        }
        if let Ok(curve) = validate(&CurveParams::new(p, n, f)) {
            curves.push(curve);
        }
    }
    curves
}

/// The corpus shared by the oracle-equivalence, lift-identity, isomorphism,
/// and truncation-sufficiency sweeps.
pub fn mixed_corpus() -> Vec<DerivedParams> {
    random_corpus(50, &[2, 3, 4, 5])
}

/// An `n = 2` corpus for the classical Hasse-Witt comparison.
pub fn hyperelliptic_corpus() -> Vec<DerivedParams> {
    random_corpus(20, &[2])
}
