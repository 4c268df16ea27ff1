#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use tistar::catalog::{monomials, random_theta};
use tistar::sampling::seeded_rng;
use tistar::{Complex64, MomentumVector, Polynomial, StarCocycle};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn theta_a2() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

pub fn theta_a3() -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[0.0, 0.7, -0.3, -0.7, 0.0, 1.2, 0.3, -1.2, 0.0])
}

pub fn theta_s3() -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[1.0, 0.25, 0.0, 0.25, -0.5, 0.4, 0.0, 0.4, 0.8])
}

/// `i qᵀθ_A p` written out by substitution, independent of the library's
/// matrix storage.
pub fn moyal_formula(theta_a: &DMatrix<f64>, p: &[f64], q: &[f64]) -> Complex64 {
    let mut s = 0.0;
    for mu in 0..p.len() {
        for nu in 0..p.len() {
            s += q[mu] * theta_a[(mu, nu)] * p[nu];
        }
    }
    c(0.0, s)
}

/// `i qᵀθ_A p + qᵀθ_S(p − q)`.
pub fn wick_voros_formula(ta: &DMatrix<f64>, ts: &DMatrix<f64>, p: &[f64], q: &[f64]) -> Complex64 {
    let mut s = 0.0;
    for mu in 0..p.len() {
        for nu in 0..p.len() {
            s += q[mu] * ts[(mu, nu)] * (p[nu] - q[nu]);
        }
    }
    moyal_formula(ta, p, q) + s
}

/// β whose coboundary respects `(f⋆g)* = g*⋆f*`: real coefficients on even
/// degrees, imaginary on odd degrees.
pub fn reality_beta(m: usize, degree: u32, seed: u64) -> Polynomial {
    let mut rng = seeded_rng(seed);
    let terms: Vec<_> = monomials(m, degree)
        .into_iter()
        .map(|k| {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            let coeff = if k.iter().sum::<u32>() % 2 == 0 {
                c(x, 0.0)
            } else {
                c(0.0, x)
            };
            (k, coeff)
        })
        .collect();
    Polynomial::from_terms(m, terms).unwrap()
}

pub fn reality_cocycle(m: usize, degree: u32, seed: u64) -> StarCocycle {
    StarCocycle::new(random_theta(m, seed), reality_beta(m, degree, seed + 1)).unwrap()
}

pub fn mv(coords: &[(i64, i64)]) -> MomentumVector {
    MomentumVector::from_ratios(coords)
}
