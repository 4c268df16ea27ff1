//! Named products and seeded generators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeSet;

use crate::cocycle::{ComplexMatrix, StarCocycle, MAX_BETA_DEGREE};
use crate::equivalence::GaugeCochain;
use crate::error::{Error, Result};
use crate::modefield::ModeField;
use crate::momentum::MomentumVector;
use crate::polynomial::{MultiIndex, Polynomial};
use crate::sampling::{seeded_rng, Sampler, DEFAULT_BOUND, DEFAULT_MAX_DEN};

/// Largest mode count accepted by [`random_modefield`].
pub const MAX_MODES: usize = 64;

pub const PRESETS: [&str; 3] = ["moyal", "wick-voros", "random"];

fn exact_defect(m: &DMatrix<f64>, sign: f64) -> Result<()> {
    Error::check_dim(m.nrows(), m.ncols())?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != sign * m[(j, i)] || !m[(i, j)].is_finite() {
                let kind = if sign < 0.0 {
                    "antisymmetric"
                } else {
                    "symmetric"
                };
                return Err(Error::Input(format!("matrix is not {kind} at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// Groenewold–Moyal cocycle `α(p,q) = i qᵀθ_A p`, stored as `Θ = −iθ_A` so
/// that `α(p,q) = pᵀΘq`.
pub fn moyal(theta_a: &DMatrix<f64>) -> Result<StarCocycle> {
    exact_defect(theta_a, -1.0)?;
    StarCocycle::harmonic(theta_a.map(|x| Complex64::new(0.0, -x)))
}

/// `β(p) = −½ pᵀθ_S p`, whose coboundary is `qᵀθ_S(p−q)`.
pub fn wick_voros_gauge(theta_s: &DMatrix<f64>) -> Result<GaugeCochain> {
    exact_defect(theta_s, 1.0)?;
    GaugeCochain::new(Polynomial::quadratic_form(theta_s, -0.5)?)
}

/// Wick–Voros cocycle `α(p,q) = i qᵀθ_A p + qᵀθ_S(p−q)`.
pub fn wick_voros(theta_a: &DMatrix<f64>, theta_s: &DMatrix<f64>) -> Result<StarCocycle> {
    Error::check_dim(theta_a.nrows(), theta_s.nrows())?;
    let harmonic = moyal(theta_a)?;
    let gauge = wick_voros_gauge(theta_s)?;
    StarCocycle::new(harmonic.theta().clone(), gauge.polynomial().clone())
}

/// All multi-indices in `m` variables with total degree in `1..=degree`,
/// in lexicographic order.
pub fn monomials(m: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(m: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == m {
            if prefix.iter().sum::<u32>() > 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(m, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, degree, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Antisymmetric, purely imaginary Θ with entries `i·U[−1, 1]`.
pub fn random_theta(m: usize, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let mut theta = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let t: f64 = rng.gen_range(-1.0..=1.0);
            theta[(i, j)] = Complex64::new(0.0, t);
            theta[(j, i)] = Complex64::new(0.0, -t);
        }
    }
    theta
}

/// Real polynomial with every monomial of degree `1..=degree` and
/// coefficients in `[−1, 1]`.
pub fn random_beta(m: usize, degree: u32, seed: u64) -> Result<Polynomial> {
    if degree > MAX_BETA_DEGREE {
        return Err(Error::Input(format!(
            "beta degree {degree} exceeds cap {MAX_BETA_DEGREE}"
        )));
    }
    let mut rng = seeded_rng(seed);
    Polynomial::from_terms(
        m,
        monomials(m, degree)
            .into_iter()
            .map(|k| (k, Complex64::new(rng.gen_range(-1.0..=1.0), 0.0)))
            .collect::<Vec<_>>(),
    )
}

/// `Θ` from `theta_seed`, `β` from `rng_seed`: equal theta seeds give
/// cohomologous cocycles.
pub fn random_cocycle(
    m: usize,
    theta_seed: u64,
    beta_degree: u32,
    rng_seed: u64,
) -> Result<StarCocycle> {
    StarCocycle::new(
        random_theta(m, theta_seed),
        random_beta(m, beta_degree, rng_seed)?,
    )
}

/// Shape of a random field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub dimension: usize,
    pub modes: usize,
    /// Frequencies are drawn from `[−bound, bound]ᵐ`.
    pub bound: i64,
    pub max_den: i64,
    /// Put the first mode at frequency zero.
    pub include_zero: bool,
}

impl FieldSpec {
    pub fn new(dimension: usize, modes: usize) -> Self {
        FieldSpec {
            dimension,
            modes,
            bound: DEFAULT_BOUND,
            max_den: DEFAULT_MAX_DEN,
            include_zero: false,
        }
    }

    pub fn with_box(mut self, bound: i64, max_den: i64) -> Self {
        self.bound = bound;
        self.max_den = max_den;
        self
    }

    pub fn with_zero_mode(mut self) -> Self {
        self.include_zero = true;
        self
    }
}

/// Field with `spec.modes` distinct rational frequencies and coefficients
/// whose real and imaginary parts lie in `[−1, 1]`.
pub fn random_modefield(spec: &FieldSpec, seed: u64) -> Result<ModeField> {
    if spec.modes > MAX_MODES {
        return Err(Error::Input(format!(
            "{} modes requested, cap is {MAX_MODES}",
            spec.modes
        )));
    }
    if spec.max_den < 1 || spec.max_den > 8 || spec.bound < 0 {
        return Err(Error::Input(
            "frequency box must have bound ≥ 0 and denominators in 1..=8".into(),
        ));
    }
    let mut sampler = Sampler::new(spec.dimension, seed).with_box(spec.bound, spec.max_den);
    let mut freqs = BTreeSet::new();
    let mut order = Vec::with_capacity(spec.modes);
    if spec.include_zero && spec.modes > 0 {
        let zero = MomentumVector::zeros(spec.dimension);
        freqs.insert(zero.clone());
        order.push(zero);
    }
    let mut attempts = 0;
    while order.len() < spec.modes {
        attempts += 1;
        if attempts > 100 * MAX_MODES {
            return Err(Error::Input(
                "frequency box too small for the requested mode count".into(),
            ));
        }
        let p = sampler.momentum();
        if freqs.insert(p.clone()) {
            order.push(p);
        }
    }
    let rng = sampler.rng();
    let modes: Vec<_> = order
        .into_iter()
        .map(|p| {
            let c = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            (p, c)
        })
        .collect();
    ModeField::from_modes(spec.dimension, modes)
}

/// `θ_A` with every upper-triangle entry equal to 1.
pub fn canonical_theta_a(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => 1.0,
        std::cmp::Ordering::Greater => -1.0,
        std::cmp::Ordering::Equal => 0.0,
    })
}

/// Named catalog entry. `moyal` and `wick-voros` use [`canonical_theta_a`]
/// (and `θ_S = 1` for Wick–Voros); `random` is a degree-2
/// [`random_cocycle`] seeded by `seed`.
pub fn preset(name: &str, m: usize, seed: u64) -> Result<StarCocycle> {
    match name {
        "moyal" => moyal(&canonical_theta_a(m)),
        "wick-voros" => wick_voros(&canonical_theta_a(m), &DMatrix::identity(m, m)),
        "random" => random_cocycle(m, seed, 2, seed),
        other => Err(Error::Input(format!(
            "unknown preset {other:?}; expected one of {PRESETS:?}"
        ))),
    }
}
