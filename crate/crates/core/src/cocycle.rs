//! Two-cocycles generating translation-invariant star products, their
//! validators, the harmonic projection and the θ-classification.
//!
//! A cocycle `α` satisfies
//!
//! ```text
//! α(p,q) + α(q,r) = α(p,r) + α(p−r, q−r)          (associativity)
//! α(p,p) = α(p,0) = 0                              (unitality)
//! ```
//!
//! Every such `α` splits as a constant antisymmetric bilinear form plus a
//! coboundary, `α(p,q) = pᵀΘq + β(q) − β(p) + β(p−q)`. [`StarCocycle`] stores
//! that split directly; [`BlackBoxCocycle`] is an arbitrary evaluator that is
//! validated by sampling.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cochain::{coboundary, NCochain};
use crate::diff::{second_partial, Slot, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::momentum::{rational_from_f64, MomentumVector};
use crate::polynomial::Polynomial;
use crate::report::{Report, Tracker};
use crate::sampling::Sampler;

pub type ComplexMatrix = DMatrix<Complex64>;

/// Degree cap on β; keeps `e^β` representable on the sampling box.
pub const MAX_BETA_DEGREE: u32 = 6;

/// Samples and tolerance used when an operation validates a black-box
/// cocycle before trusting it.
pub const VALIDATION_SAMPLES: usize = 64;
pub const VALIDATION_TOL: f64 = 1e-9;
pub const VALIDATION_SEED: u64 = 0x5eed;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest `|Mᵢⱼ + Mⱼᵢ|`.
pub fn antisymmetry_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] + m[(j, i)]).norm());
        }
    }
    worst
}

fn bilinear(p: &[f64], theta: &ComplexMatrix, q: &[f64]) -> Complex64 {
    let mut acc = ZERO;
    for (i, pi) in p.iter().enumerate() {
        if *pi == 0.0 {
            continue;
        }
        for (j, qj) in q.iter().enumerate() {
            acc += theta[(i, j)] * (pi * qj);
        }
    }
    acc
}

fn structural_report(theta: &ComplexMatrix, beta: &Polynomial) -> Report {
    let mut anti = Tracker::new("theta_antisymmetry", 0.0);
    anti.observe(antisymmetry_defect(theta), Vec::new);
    let mut constant = Tracker::new("beta_constant_term", 0.0);
    constant.observe(beta.constant_term().norm(), Vec::new);
    let mut degree = Tracker::new("beta_degree", f64::from(MAX_BETA_DEGREE));
    degree.observe(f64::from(beta.degree()), Vec::new);
    Report {
        name: "structure".into(),
        entries: vec![anti.finish(), constant.finish(), degree.finish()],
    }
}

/// Structured 2-cocycle `α(p,q) = pᵀΘq + β(q) − β(p) + β(p−q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarCocycle {
    theta: ComplexMatrix,
    beta: Polynomial,
}

impl StarCocycle {
    /// Validates antisymmetry of `theta` (exact), `β(0) = 0`, and the degree
    /// cap. Violations come back as [`Error::Validation`] with one entry per
    /// condition.
    pub fn new(theta: ComplexMatrix, beta: Polynomial) -> Result<Self> {
        let m = theta.nrows();
        Error::check_dim(m, theta.ncols())?;
        Error::check_dim(m, beta.dimension())?;
        if theta
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Input("theta has non-finite entries".into()));
        }
        let report = structural_report(&theta, &beta);
        if !report.passed() {
            return Err(Error::Validation(Box::new(report)));
        }
        Ok(StarCocycle { theta, beta })
    }

    pub fn zero(m: usize) -> Self {
        StarCocycle {
            theta: ComplexMatrix::zeros(m, m),
            beta: Polynomial::zero(m),
        }
    }

    /// Pure harmonic form `α(p,q) = pᵀΘq`.
    pub fn harmonic(theta: ComplexMatrix) -> Result<Self> {
        let m = theta.nrows();
        Self::new(theta, Polynomial::zero(m))
    }

    /// Pure coboundary `α = ∂β`.
    pub fn coboundary_of(beta: Polynomial) -> Result<Self> {
        let m = beta.dimension();
        Self::new(ComplexMatrix::zeros(m, m), beta)
    }

    pub fn dimension(&self) -> usize {
        self.theta.nrows()
    }

    pub fn theta(&self) -> &ComplexMatrix {
        &self.theta
    }

    pub fn beta(&self) -> &Polynomial {
        &self.beta
    }

    pub fn eval_f64(&self, p: &[f64], q: &[f64]) -> Complex64 {
        let harmonic = bilinear(p, &self.theta, q);
        if self.beta.is_zero() {
            return harmonic;
        }
        let diff: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
        harmonic + self.beta.eval_f64(q) - self.beta.eval_f64(p) + self.beta.eval_f64(&diff)
    }

    pub fn eval(&self, p: &MomentumVector, q: &MomentumVector) -> Complex64 {
        // p − q is formed exactly before conversion.
        let harmonic = bilinear(&p.to_f64(), &self.theta, &q.to_f64());
        if self.beta.is_zero() {
            return harmonic;
        }
        harmonic + self.beta.eval(q) - self.beta.eval(p) + self.beta.eval(&(p - q))
    }

    /// The harmonic representative: same Θ, β dropped.
    pub fn harmonic_part(&self) -> StarCocycle {
        StarCocycle {
            theta: self.theta.clone(),
            beta: Polynomial::zero(self.dimension()),
        }
    }

    /// `∂β` as a 2-cochain; `α − α_H` equals this pointwise.
    pub fn coboundary_part(&self) -> NCochain {
        coboundary(&NCochain::from_polynomial(self.beta.clone()))
            .expect("arity 1 is always supported")
    }
}

type PairFn = dyn Fn(&MomentumVector, &MomentumVector) -> Complex64 + Send + Sync;

/// Arbitrary evaluator `α(p,q)`; the cocycle axioms are checked by sampling.
#[derive(Clone)]
pub struct BlackBoxCocycle {
    dimension: usize,
    eval: Arc<PairFn>,
}

impl fmt::Debug for BlackBoxCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackBoxCocycle")
            .field("dimension", &self.dimension)
            .finish_non_exhaustive()
    }
}

impl BlackBoxCocycle {
    pub fn new<F>(dimension: usize, eval: F) -> Self
    where
        F: Fn(&MomentumVector, &MomentumVector) -> Complex64 + Send + Sync + 'static,
    {
        BlackBoxCocycle {
            dimension,
            eval: Arc::new(eval),
        }
    }

    /// Convenience constructor for evaluators written over floats.
    pub fn from_f64<F>(dimension: usize, eval: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> Complex64 + Send + Sync + 'static,
    {
        Self::new(dimension, move |p, q| eval(&p.to_f64(), &q.to_f64()))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

#[derive(Debug, Clone)]
pub enum Cocycle {
    Structured(StarCocycle),
    BlackBox(BlackBoxCocycle),
}

impl From<StarCocycle> for Cocycle {
    fn from(c: StarCocycle) -> Self {
        Cocycle::Structured(c)
    }
}

impl From<BlackBoxCocycle> for Cocycle {
    fn from(c: BlackBoxCocycle) -> Self {
        Cocycle::BlackBox(c)
    }
}

impl Cocycle {
    pub fn dimension(&self) -> usize {
        match self {
            Cocycle::Structured(s) => s.dimension(),
            Cocycle::BlackBox(b) => b.dimension,
        }
    }

    pub fn as_structured(&self) -> Option<&StarCocycle> {
        match self {
            Cocycle::Structured(s) => Some(s),
            Cocycle::BlackBox(_) => None,
        }
    }

    pub fn eval(&self, p: &MomentumVector, q: &MomentumVector) -> Result<Complex64> {
        p.check_dim(self.dimension())?;
        q.check_dim(self.dimension())?;
        Ok(self.eval_unchecked(p, q))
    }

    /// Evaluates without dimension checks; callers guarantee matching sizes.
    pub fn eval_unchecked(&self, p: &MomentumVector, q: &MomentumVector) -> Complex64 {
        match self {
            Cocycle::Structured(s) => s.eval(p, q),
            Cocycle::BlackBox(b) => (b.eval)(p, q),
        }
    }

    pub fn to_cochain(&self) -> NCochain {
        let a = self.clone();
        NCochain::new(2, self.dimension(), move |args| {
            a.eval_unchecked(&args[0], &args[1])
        })
        .expect("arity 2")
    }
}

pub fn eval_alpha(a: &Cocycle, p: &MomentumVector, q: &MomentumVector) -> Result<Complex64> {
    a.eval(p, q)
}

fn describe(points: &[&MomentumVector]) -> Vec<String> {
    points.iter().map(ToString::to_string).collect()
}

fn check_dims<'a>(a: &Cocycle, points: impl IntoIterator<Item = &'a MomentumVector>) -> Result<()> {
    let m = a.dimension();
    points.into_iter().try_for_each(|p| p.check_dim(m))
}

/// Residual of `α(p,q) + α(q,r) − α(p,r) − α(p−r, q−r)` over the samples.
pub fn check_cocycle_condition(
    a: &Cocycle,
    samples: &[(MomentumVector, MomentumVector, MomentumVector)],
    tol: f64,
) -> Result<Report> {
    let mut t = Tracker::new("cocycle", tol);
    for (p, q, r) in samples {
        check_dims(a, [p, q, r])?;
        t.observe(cocycle_residual(a, p, q, r).norm(), || describe(&[p, q, r]));
    }
    Ok(Report::new("cocycle").with_entry(t.finish()))
}

pub(crate) fn cocycle_residual(
    a: &Cocycle,
    p: &MomentumVector,
    q: &MomentumVector,
    r: &MomentumVector,
) -> Complex64 {
    a.eval_unchecked(p, q) + a.eval_unchecked(q, r)
        - a.eval_unchecked(p, r)
        - a.eval_unchecked(&(p - r), &(q - r))
}

/// Unitality `α(p,p) = α(p,0) = 0` and its corollary `α(0,p) = α(0,−p)`,
/// reported as three separate entries.
pub fn check_unitality(a: &Cocycle, samples: &[MomentumVector], tol: f64) -> Result<Report> {
    let zero = MomentumVector::zeros(a.dimension());
    let mut diag = Tracker::new("unit_diagonal", tol);
    let mut right = Tracker::new("unit_zero", tol);
    let mut corollary = Tracker::new("unit_corollary", tol);
    for p in samples {
        check_dims(a, [p])?;
        diag.observe(a.eval_unchecked(p, p).norm(), || describe(&[p]));
        right.observe(a.eval_unchecked(p, &zero).norm(), || describe(&[p]));
        let c = a.eval_unchecked(&zero, p) - a.eval_unchecked(&zero, &-p);
        corollary.observe(c.norm(), || describe(&[p]));
    }
    Ok(Report {
        name: "unitality".into(),
        entries: vec![diag.finish(), right.finish(), corollary.finish()],
    })
}

/// Cocycle and unitality checks on seeded samples from the default box.
pub fn validate(a: &Cocycle, samples: usize, seed: u64, tol: f64) -> Report {
    let mut s = Sampler::new(a.dimension(), seed);
    let triples = s.triples(samples);
    let points: Vec<_> = (0..samples).map(|_| s.momentum()).collect();
    let cocycle = check_cocycle_condition(a, &triples, tol).expect("sampled in dimension");
    let unit = check_unitality(a, &points, tol).expect("sampled in dimension");
    Report::merge("validate", [cocycle, unit])
}

fn ensure_valid(a: &Cocycle) -> Result<()> {
    if a.as_structured().is_some() {
        return Ok(());
    }
    let report = validate(a, VALIDATION_SAMPLES, VALIDATION_SEED, VALIDATION_TOL);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Validation(Box::new(report)))
    }
}

/// `α_H(p,q) = [α(p+q, q) − α(p+q, p)] / 2`.
///
/// On a structured cocycle this is the pure-Θ cocycle.
pub fn harmonic_projection(a: &Cocycle) -> Cocycle {
    match a {
        Cocycle::Structured(s) => Cocycle::Structured(s.harmonic_part()),
        Cocycle::BlackBox(b) => {
            let inner = b.clone();
            Cocycle::BlackBox(BlackBoxCocycle::new(b.dimension, move |p, q| {
                let sum = p + q;
                ((inner.eval)(&sum, q) - (inner.eval)(&sum, p)) / 2.0
            }))
        }
    }
}

/// The three harmonic-form identities, one entry each:
/// `α(p,q) = −α(p,p−q)`, `α(p,q) = α(−p,−q)`, `α(p,q) = −α(q,p)`.
pub fn check_harmonic(
    a: &Cocycle,
    samples: &[(MomentumVector, MomentumVector)],
    tol: f64,
) -> Result<Report> {
    let mut shift = Tracker::new("harmonic_shift", tol);
    let mut parity = Tracker::new("harmonic_parity", tol);
    let mut swap = Tracker::new("harmonic_swap", tol);
    for (p, q) in samples {
        check_dims(a, [p, q])?;
        let v = a.eval_unchecked(p, q);
        shift.observe((v + a.eval_unchecked(p, &(p - q))).norm(), || {
            describe(&[p, q])
        });
        parity.observe((v - a.eval_unchecked(&-p, &-q)).norm(), || {
            describe(&[p, q])
        });
        swap.observe((v + a.eval_unchecked(q, p)).norm(), || describe(&[p, q]));
    }
    Ok(Report {
        name: "harmonic".into(),
        entries: vec![shift.finish(), parity.finish(), swap.finish()],
    })
}

/// `∂²α/∂zⁱ∂z'ʲ` at `(p,q)` by Richardson-extrapolated central differences,
/// whatever the representation of `a`.
pub fn extract_sigma_fd(
    a: &Cocycle,
    p: &MomentumVector,
    q: &MomentumVector,
    h: f64,
) -> Result<ComplexMatrix> {
    fd_matrix(a, p, q, h, Slot::First, Slot::Second)
}

/// `∂²α/∂z'ⁱ∂z'ʲ` at `(p,q)` by finite differences.
pub fn second_slot_hessian_fd(
    a: &Cocycle,
    p: &MomentumVector,
    q: &MomentumVector,
    h: f64,
) -> Result<ComplexMatrix> {
    fd_matrix(a, p, q, h, Slot::Second, Slot::Second)
}

fn fd_matrix(
    a: &Cocycle,
    p: &MomentumVector,
    q: &MomentumVector,
    h: f64,
    row: Slot,
    col: Slot,
) -> Result<ComplexMatrix> {
    check_dims(a, [p, q])?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Input(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let step = rational_from_f64(h)?;
    let m = a.dimension();
    let f = |x: &MomentumVector, y: &MomentumVector| a.eval_unchecked(x, y);
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        second_partial(&f, p, q, (row, i), (col, j), &step)
    }))
}

/// Mixed-partial matrix `σᵢⱼ = ∂²α/∂zⁱ∂z'ʲ` at `(p,q)`.
///
/// Structured cocycles give the analytic `Θ − Hess β(p−q)`; black boxes fall
/// back to [`extract_sigma_fd`].
pub fn extract_sigma(
    a: &Cocycle,
    p: &MomentumVector,
    q: &MomentumVector,
    h: f64,
) -> Result<ComplexMatrix> {
    match a {
        Cocycle::Structured(s) => {
            check_dims(a, [p, q])?;
            let hess = s.beta.hessian_at(&(p - q).to_f64());
            Ok(&s.theta - hess)
        }
        Cocycle::BlackBox(_) => extract_sigma_fd(a, p, q, h),
    }
}

/// The cohomology invariant of a cocycle: the antisymmetric matrix `Θ` of its
/// harmonic representative `α_H(p,q) = pᵀΘq`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaClass {
    matrix: ComplexMatrix,
}

impl ThetaClass {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Error::check_dim(matrix.nrows(), matrix.ncols())?;
        Ok(ThetaClass { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// Orientation `α_H(p,q) = pᵀΘq`.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The real matrix `θ_A` with `α_H(p,q) = i qᵀθ_A p`; equals `iΘ`.
    pub fn moyal_matrix(&self) -> ComplexMatrix {
        self.matrix.map(|c| c * Complex64::i())
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        antisymmetry_defect(&self.matrix)
    }

    /// Membership in the α*-subspace: every entry purely imaginary.
    pub fn is_pure_imaginary(&self, tol: f64) -> bool {
        self.matrix.iter().all(|c| c.re.abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &ThetaClass) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.matrix.iter().all(|c| c.norm() <= tol)
    }

    /// Real basis `{Eᵢⱼ − Eⱼᵢ}` and `{i(Eᵢⱼ − Eⱼᵢ)}`, i < j, of all complex
    /// antisymmetric matrices.
    pub fn alpha_basis(m: usize) -> Vec<ThetaClass> {
        let mut out = Self::unit_pairs(m, Complex64::new(1.0, 0.0));
        out.extend(Self::unit_pairs(m, Complex64::i()));
        out
    }

    /// Real basis `{i(Eᵢⱼ − Eⱼᵢ)}`, i < j, of the pure-imaginary classes.
    pub fn alpha_star_basis(m: usize) -> Vec<ThetaClass> {
        Self::unit_pairs(m, Complex64::i())
    }

    fn unit_pairs(m: usize, unit: Complex64) -> Vec<ThetaClass> {
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let mut t = ComplexMatrix::zeros(m, m);
                t[(i, j)] = unit;
                t[(j, i)] = -unit;
                out.push(ThetaClass { matrix: t });
            }
        }
        out
    }
}

/// Real dimension of the space of all θ-classes: `m(m−1)`.
pub fn dim_h2_alpha(m: usize) -> usize {
    m * m.saturating_sub(1)
}

/// Real dimension of the pure-imaginary θ-classes: `m(m−1)/2`.
pub fn dim_h2_alpha_star(m: usize) -> usize {
    dim_h2_alpha(m) / 2
}

/// Classifies a cocycle by its harmonic θ-matrix.
///
/// Structured input returns the stored Θ exactly. A black box is first
/// validated, then projected, and Θ is read off as the antisymmetrised
/// mixed-partial matrix at the origin.
pub fn classify(a: &Cocycle) -> Result<ThetaClass> {
    match a {
        Cocycle::Structured(s) => Ok(ThetaClass {
            matrix: s.theta.clone(),
        }),
        Cocycle::BlackBox(_) => {
            ensure_valid(a)?;
            let h = harmonic_projection(a);
            let zero = MomentumVector::zeros(a.dimension());
            let sigma = extract_sigma_fd(&h, &zero, &zero, DEFAULT_STEP)?;
            let anti = (&sigma - sigma.transpose()) / Complex64::new(2.0, 0.0);
            Ok(ThetaClass { matrix: anti })
        }
    }
}

/// `[xⁱ, xʲ]⋆ = Mᵢⱼ − Mⱼᵢ` with `Mₐᵦ = ∂²α/∂zᵃ∂z'ᵇ(0,0)`.
///
/// With this orientation the harmonic cocycle `α(p,q) = i pᵀθq` gives
/// `[xⁱ, xʲ]⋆ = 2iθᵢⱼ`.
pub fn coordinate_commutator(a: &Cocycle) -> ComplexMatrix {
    let zero = MomentumVector::zeros(a.dimension());
    let m =
        extract_sigma(a, &zero, &zero, DEFAULT_STEP).expect("origin has the cocycle's dimension");
    &m - m.transpose()
}

pub fn is_cohomologous(a1: &Cocycle, a2: &Cocycle, tol: f64) -> Result<bool> {
    Error::check_dim(a1.dimension(), a2.dimension())?;
    let t1 = classify(a1)?;
    let t2 = classify(a2)?;
    Ok(t1.max_abs_diff(&t2) <= tol)
}

/// Mode-level form of `(f⋆g)* = g*⋆f*`: `conj(α(r,q)) = α(−r, q−r)`.
pub fn check_complex_property(
    a: &Cocycle,
    samples: &[(MomentumVector, MomentumVector)],
    tol: f64,
) -> Result<Report> {
    let mut t = Tracker::new("complex", tol);
    for (r, q) in samples {
        check_dims(a, [r, q])?;
        let lhs = a.eval_unchecked(r, q).conj();
        let rhs = a.eval_unchecked(&-r, &(q - r));
        t.observe((lhs - rhs).norm(), || describe(&[r, q]));
    }
    Ok(Report::new("complex").with_entry(t.finish()))
}
